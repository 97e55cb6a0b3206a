#pragma once

#include "paramosc/params.hpp"

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace paramosc {

/// Rotating-frame quadratures (Q, P).
struct FlowState {
    double q = 0.0;
    double p = 0.0;
};

using Jacobian2 = std::array<std::array<double, 2>, 2>;

/// Noise-free flow in the rotating frame with s = sgn(gamma):
///   dQ/dtau =  s (P R^2 - mu P) + (f - 1) Q
///   dP/dtau = -s (Q R^2 - mu Q) - (f + 1) P,   R^2 = Q^2 + P^2.
/// Flipping s is the same as P -> -P.
FlowState drift(FlowState x, const ScaledParams& sp);
Jacobian2 jacobian(FlowState x, const ScaledParams& sp);
std::array<std::complex<double>, 2> eigenvalues(const Jacobian2& j);

enum class Stability { stable_node, stable_focus, saddle, unstable, degenerate };

std::string to_string(Stability s);

struct FlowFixedPoint {
    FlowState state;
    double radius_sq = 0.0;
    std::array<std::complex<double>, 2> eigen{};
    Stability stability = Stability::degenerate;
    double residual = 0.0; ///< |drift| at the point

    bool stable() const
    {
        return stability == Stability::stable_node || stability == Stability::stable_focus;
    }
};

FlowFixedPoint classify(FlowState x, const ScaledParams& sp, double det_tol = 1e-12);

struct FixedPointOptions {
    int max_iterations = 60;
    int restarts = 4;
    double tolerance = 1e-13;       ///< Newton stops below this |drift|
    double accept = 1e-10;          ///< a point is kept only below this |drift|
    std::size_t seeds_per_circle = 8;
};

/// All fixed points, found by damped Newton from seeds on the circles
/// R^2 = mu +- mu_B and at the origin. Sorted by (R^2, Q, P).
std::vector<FlowFixedPoint> find_flow_fixed_points(const ScaledParams& sp,
                                                   const FixedPointOptions& opts = {});

std::size_t stable_count(const ScaledParams& sp);

struct TracedRow {
    double drive = 1.0;
    double lower = 0.0;       ///< detected mu_B1
    double upper = 0.0;       ///< detected mu_B2
    double lower_exact = 0.0;
    double upper_exact = 0.0;
    double phase = 0.0;       ///< equal-occupation line from the rates module
};

struct TracedDiagram {
    std::vector<TracedRow> rows;
    /// Detected f_p of the threshold line f_p = 1 at sampled mu_p > 0.
    std::vector<std::array<double, 2>> threshold_line; ///< (mu_p, f_p)
    double max_error = 0.0;    ///< largest |detected - exact| over both lines
    double meeting_gap = 0.0;  ///< distance of the innermost samples from (1, 0)
};

/// Bisects the number of stable fixed points in mu_p for every drive >= 1
/// and in f_p along the mu_p > 0 threshold line.
TracedDiagram trace_bifurcation_diagram(std::span<const double> drives, double tol = 1e-12,
                                        unsigned threads = 1);

/// P on the branch of dP/dtau = 0 that passes through P = 0 at Q = 0.
/// Throws BranchLost when that branch does not exist at Q.
double adiabatic_momentum(double q, const ScaledParams& sp);

/// dQ/dtau with P slaved to Q.
double adiabatic_drift(double q, const ScaledParams& sp);

struct AdiabaticComparison {
    double half_width = 0.0;       ///< factor (mu + mu_B)^(1/2)
    double max_deviation = 0.0;    ///< max |eliminated drift + U'|
    double scale = 0.0;            ///< max |U'| on the interval
    double relative_deviation = 0.0;
};

/// Compares the eliminated drift with -U'(Q) on |Q| <= factor (mu + mu_B)^(1/2);
/// the default is the basin interval between the outer attractors.
AdiabaticComparison compare_adiabatic(const ScaledParams& sp, std::size_t points = 801,
                                      double factor = 1.0);

/// Integrates the flow to t_end with an adaptive Dormand-Prince pair.
FlowState relax(FlowState start, const ScaledParams& sp, double t_end, double tol = 1e-9);

} // namespace paramosc
