#pragma once

#include "paramosc/grid.hpp"
#include "paramosc/params.hpp"
#include "paramosc/simd/kernels.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paramosc {

struct PotentialEval {
    double value = 0.0;
    double slope = 0.0;
    double curvature = 0.0;
};

/// Even sextic U(Q) = c2 Q^2 + c4 Q^4 + c6 Q^6 governing the slow
/// quadrature near the excitation threshold. Built from control parameters
/// it has c2 = [mu^2 - (f^2 - 1)]/4, c4 = -mu/4, c6 = 1/12; the general
/// constructor exists for reference problems such as the harmonic well.
class Potential {
public:
    Potential(double c2, double c4, double c6);

    static Potential from_control(double detuning, double drive);
    static Potential from_scaled(const ScaledParams& sp);
    /// U = stiffness Q^2 / 2.
    static Potential quadratic(double stiffness);

    double c2() const { return coeffs_.c2; }
    double c4() const { return coeffs_.c4; }
    double c6() const { return coeffs_.c6; }
    simd::SexticCoeffs coeffs() const { return coeffs_; }

    /// Present when the potential was built from (mu_p, f_p).
    std::optional<double> detuning() const { return detuning_; }
    std::optional<double> drive() const { return drive_; }

    double value(double q) const;
    double slope(double q) const;
    double curvature(double q) const;
    PotentialEval evaluate(double q) const;

    /// U as a function of x = Q^2.
    double value_sq(double x) const { return x * (coeffs_.c2 + x * (coeffs_.c4 + x * coeffs_.c6)); }
    /// U(sqrt(x_to)) - U(sqrt(x_from)) in factored form, free of the
    /// cancellation a plain difference suffers for nearby levels.
    double difference_sq(double x_from, double x_to) const;

    /// Largest |U''| over [-half_width, half_width].
    double max_abs_curvature(double half_width) const;

private:
    simd::SexticCoeffs coeffs_;
    std::optional<double> detuning_;
    std::optional<double> drive_;
};

/// mu_B = (f_p^2 - 1)^(1/2); rejects f_p < 1.
double bifurcation_detuning(double drive);

enum class ExtremumKind { minimum, maximum, degenerate };
enum class Regime { monostable, bistable, tristable };

std::string to_string(Regime r);
std::string to_string(ExtremumKind k);

struct Extremum {
    double position = 0.0;
    double value = 0.0;
    double curvature = 0.0;
    ExtremumKind kind = ExtremumKind::minimum;
    double position_sq() const { return position * position; }
};

struct ExtremumSet {
    std::vector<Extremum> attractors; ///< U'' > 0, ascending in Q
    std::vector<Extremum> saddles;    ///< U'' < 0, ascending in Q
    std::vector<Extremum> degenerate; ///< merged roots on a bifurcation line
    Regime regime = Regime::monostable;
    bool degeneracy = false;

    std::vector<Extremum> all() const;
};

/// Stationary points from the quadratic in x = Q^2 that U'(Q)/Q reduces to.
/// Roots closer than merge_tol (to each other or to x = 0) are merged and
/// reported as degenerate.
ExtremumSet find_extrema(const Potential& u, double merge_tol = 1e-12);

struct BoundaryPoint {
    double drive = 1.0;
    double lower = 0.0; ///< mu_B1 = -mu_B
    double upper = 0.0; ///< mu_B2 = +mu_B
    double phase = 0.0; ///< equal-occupation detuning
};

struct BifurcationDiagram {
    std::vector<BoundaryPoint> rows;
    /// The third line is the half-line f_p = 1, mu_p > 0; all meet here.
    double critical_drive = 1.0;
    double critical_detuning = 0.0;
};

/// Closed-form bifurcation lines sampled on drives >= 1. The phase column is
/// filled by phase_line when given (it is 0 at f_p = 1, where the line ends).
BifurcationDiagram bifurcation_boundaries(std::span<const double> drives,
                                          const std::function<double(double)>& phase_line = {});

/// Half-width of the symmetric grid that keeps every extremum and the
/// inflection shoulder inside and ends where U has risen threshold*D above
/// both its global minimum and its value at the outermost feature.
double support_half_width(const Potential& u, double noise, double threshold = 30.0);

struct StationaryDensity {
    std::vector<double> q;
    std::vector<double> potential;
    std::vector<double> density;
    double log_partition = 0.0; ///< ln Z, Z = integral of exp(-U/D)
    double tail_mass = 0.0;     ///< estimated mass outside the grid
    std::vector<std::string> warnings;
};

/// Boltzmann density rho_st = exp(-U/D) / Z sampled on the grid, Z by
/// composite Simpson.
StationaryDensity stationary_distribution(const Potential& u, double noise, const GridSpec& grid);

/// Convenience overload: grid from support_half_width with the given size.
StationaryDensity stationary_distribution(const Potential& u, double noise,
                                          std::size_t points = 4001);

} // namespace paramosc
