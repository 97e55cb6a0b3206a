#pragma once

#include "paramosc/grid.hpp"
#include "paramosc/params.hpp"
#include "paramosc/potential.hpp"
#include "paramosc/tridiagonal.hpp"

#include <span>
#include <vector>

namespace paramosc {

/// How the symmetrized (Schroedinger-form) operator is discretized.
///
/// detailed_balance: central second difference for the kinetic term with the
/// effective potential (U')^2/4D - U''/2 represented through nearest-neighbour
/// exponentials of U, so exp(-U/2D) is an exact null vector and the
/// boundaries are exactly reflecting. Second-order accurate.
///
/// central_difference: the same kinetic stencil plus the effective potential
/// evaluated pointwise; the null vector is only approximate (O(h^2)).
enum class Discretization { detailed_balance, central_difference };

struct FokkerPlanckOperator {
    Potential potential;
    double noise = 0.0;
    GridSpec grid;
    Discretization scheme = Discretization::detailed_balance;
    std::vector<double> q;
    std::vector<double> u;
    /// Symmetric positive semidefinite; its eigenvalues are the decrements.
    SymmetricTridiagonal matrix;

    /// exp(-(U - U_min)/2D) normalized to unit Euclidean norm.
    std::vector<double> ground_state() const;
};

/// Throws SupportTooSmall when the grid ends before the support rule of
/// support_half_width(u, noise, support_threshold) is met.
FokkerPlanckOperator build_operator(const Potential& u, double noise, const GridSpec& grid,
                                    Discretization scheme = Discretization::detailed_balance,
                                    double support_threshold = 30.0);

/// Grid from the support rule with the given point count.
FokkerPlanckOperator build_operator(const Potential& u, double noise, std::size_t points = 2001,
                                    Discretization scheme = Discretization::detailed_balance,
                                    double support_threshold = 30.0);

/// max_i |(H psi0)_i| / max_i |H_ii psi0_i| on interior nodes, psi0 the exact
/// continuum ground state exp(-U/2D) sampled on the grid.
double stationarity_residual(const FokkerPlanckOperator& op);

struct GridConvergence {
    std::vector<std::size_t> points; ///< finest first
    std::vector<double> nu1;
    double estimated_error = 0.0;    ///< Richardson estimate for the finest grid
    double observed_order = 0.0;     ///< 0 when fewer than three levels
};

struct EigenResult {
    /// nu_0 <= nu_1 <= ... <= nu_k in units of Gamma; nu_0 ~ 0.
    std::vector<double> decrements;
    /// Unit eigenvectors of the symmetrized matrix.
    std::vector<std::vector<double>> modes;
    /// Corresponding density modes exp(-U/2D) psi_n; densities[0] integrates to 1.
    std::vector<std::vector<double>> densities;
    GridConvergence convergence;

    double nu1() const { return decrements.at(1); }
};

/// The k + 1 smallest decrements by Sturm bisection and inverse iteration.
/// With refine set, nu_1 is recomputed on grids with 2x and 4x the spacing;
/// ConvergenceFailure is thrown if the refinement deltas do not shrink.
EigenResult lowest_decrements(const FokkerPlanckOperator& op, std::size_t k = 1, bool refine = true);

struct CriticalScaledParams {
    double mu_tilde = 0.0;     ///< D^(-1/3) mu_p
    double f_tilde = 0.0;      ///< D^(-2/3) (f_p^2 - 1)
    double time_scale = 1.0;   ///< D^(2/3)
    double length_scale = 1.0; ///< D^(1/6)
};

CriticalScaledParams to_critical_scaling(const ScaledParams& sp);
/// Inverse map; lambda_p is chosen as D / (occupation + 1/2).
ScaledParams from_critical_scaling(const CriticalScaledParams& c, double noise,
                                   double occupation = 0.0);
CriticalScaledParams critical_scaled(double mu_tilde, double f_tilde, double noise);

struct Nu1Options {
    double reference_noise = 1e-3;
    std::size_t points = 2001;
    double support_threshold = 30.0;
    unsigned threads = 1;
    bool refine = true;
};

struct Nu1Point {
    double mu_tilde = 0.0;
    double f_tilde = 0.0;
    double nu1_tilde = 0.0; ///< nu_1 D^(-2/3)
    std::size_t grid_points = 0;
    double est_error = 0.0; ///< Richardson estimate, same scaling as nu1_tilde
};

/// nu_1 D^(-2/3) over (f_tilde, mu_tilde); output is f_tilde-major.
std::vector<Nu1Point> nu1_curves(std::span<const double> f_tilde, std::span<const double> mu_tilde,
                                 const Nu1Options& opts = {});

} // namespace paramosc
