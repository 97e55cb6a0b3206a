#include "paramosc/fpe.hpp"

#include "paramosc/error.hpp"
#include "paramosc/parallel.hpp"
#include "paramosc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace paramosc {

std::vector<double> FokkerPlanckOperator::ground_state() const
{
    const double u_min = *std::min_element(u.begin(), u.end());
    std::vector<double> psi(u.size());
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        psi[i] = std::exp(-(u[i] - u_min) / (2.0 * noise));
        s += psi[i] * psi[i];
    }
    const double inv = 1.0 / std::sqrt(s);
    for (double& x : psi) {
        x *= inv;
    }
    return psi;
}

FokkerPlanckOperator build_operator(const Potential& u, double noise, const GridSpec& grid,
                                    Discretization scheme, double support_threshold)
{
    if (!(noise > 0.0) || !std::isfinite(noise)) {
        throw InputError("Fokker-Planck operator needs D > 0");
    }
    grid.validate();
    const double needed = support_half_width(u, noise, support_threshold);
    if (grid.q_max < needed * (1.0 - 1e-9)) {
        throw SupportTooSmall("grid half-width " + std::to_string(grid.q_max) +
                              " is below the support rule value " + std::to_string(needed));
    }

    FokkerPlanckOperator op{u, noise, grid, scheme, grid.nodes(), {}, {}};
    const std::size_t n = grid.points;
    op.u.resize(n);
    simd::potential_values(op.q, op.u, u.coeffs());

    const double h = grid.step();
    const double kin = noise / (h * h);
    op.matrix.diag.assign(n, 0.0);
    op.matrix.offdiag.assign(n - 1, -kin);
    if (scheme == Discretization::detailed_balance) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double du = (op.u[i + 1] - op.u[i]) / (2.0 * noise);
            op.matrix.diag[i] += kin * std::exp(-du);
            op.matrix.diag[i + 1] += kin * std::exp(du);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            const double s = u.slope(op.q[i]);
            const double veff = s * s / (4.0 * noise) - 0.5 * u.curvature(op.q[i]);
            op.matrix.diag[i] = 2.0 * kin + veff;
        }
    }
    return op;
}

FokkerPlanckOperator build_operator(const Potential& u, double noise, std::size_t points,
                                    Discretization scheme, double support_threshold)
{
    if (!(noise > 0.0) || !std::isfinite(noise)) {
        throw InputError("Fokker-Planck operator needs D > 0");
    }
    const double q_max = support_half_width(u, noise, support_threshold);
    return build_operator(u, noise, GridSpec::symmetric(q_max, points), scheme, support_threshold);
}

double stationarity_residual(const FokkerPlanckOperator& op)
{
    const std::size_t n = op.q.size();
    std::vector<double> psi(n);
    const double u_min = *std::min_element(op.u.begin(), op.u.end());
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] = std::exp(-(op.u[i] - u_min) / (2.0 * op.noise));
    }
    std::vector<double> r(n);
    op.matrix.apply(psi, r);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        num = std::max(num, std::abs(r[i]));
        den = std::max(den, std::abs(op.matrix.diag[i] * psi[i]));
    }
    return num / den;
}

namespace {

double nu1_on(const FokkerPlanckOperator& op, std::size_t points)
{
    const FokkerPlanckOperator coarse = build_operator(
        op.potential, op.noise, GridSpec::symmetric(op.grid.q_max, points), op.scheme, 0.0);
    return smallest_eigenvalues(coarse.matrix, 2)[1];
}

} // namespace

EigenResult lowest_decrements(const FokkerPlanckOperator& op, std::size_t k, bool refine)
{
    if (k < 1) {
        throw InputError("need at least one nonzero decrement");
    }
    const EigenPairs pairs = smallest_eigenpairs(op.matrix, k + 1);

    EigenResult res;
    res.decrements.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        // The matrix is positive semidefinite; negative values are roundoff.
        res.decrements[j] = std::max(0.0, pairs.values[j]);
    }
    if (!(res.decrements[1] > 0.0)) {
        throw ConvergenceFailure("lowest nonzero decrement is not resolved from zero");
    }
    res.modes = pairs.vectors;

    const double u_min = *std::min_element(op.u.begin(), op.u.end());
    const double h = op.grid.step();
    res.densities.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        auto& rho = res.densities[j];
        rho.resize(op.q.size());
        for (std::size_t i = 0; i < op.q.size(); ++i) {
            rho[i] = std::exp(-(op.u[i] - u_min) / (2.0 * op.noise)) * res.modes[j][i];
        }
    }
    const double mass = simpson(res.densities[0], h);
    for (auto& rho : res.densities) {
        for (double& x : rho) {
            x /= mass;
        }
    }

    GridConvergence& conv = res.convergence;
    conv.points.push_back(op.grid.points);
    conv.nu1.push_back(res.decrements[1]);
    if (refine) {
        for (std::size_t level = 1; level <= 2; ++level) {
            const std::size_t m = (op.grid.points - 1) >> level;
            if (m % 2 != 0 || m + 1 < GridSpec::min_points) {
                break;
            }
            conv.points.push_back(m + 1);
            conv.nu1.push_back(nu1_on(op, m + 1));
        }
        if (conv.nu1.size() >= 2) {
            const double d_fine = std::abs(conv.nu1[0] - conv.nu1[1]);
            conv.estimated_error = d_fine / 3.0;
            if (conv.nu1.size() >= 3) {
                const double d_coarse = std::abs(conv.nu1[1] - conv.nu1[2]);
                const double floor = 1e-9 * conv.nu1[0];
                if (d_fine > floor && d_coarse > floor) {
                    conv.observed_order = std::log2(d_coarse / d_fine);
                }
                if (d_fine > floor && d_fine >= d_coarse) {
                    throw ConvergenceFailure("grid refinement deltas do not shrink: " +
                                             std::to_string(d_coarse) + " -> " +
                                             std::to_string(d_fine));
                }
            }
        }
    }
    return res;
}

CriticalScaledParams to_critical_scaling(const ScaledParams& sp)
{
    if (!(sp.noise > 0.0)) {
        throw InputError("critical scaling needs D > 0");
    }
    CriticalScaledParams c;
    c.time_scale = std::cbrt(sp.noise * sp.noise);
    c.length_scale = std::pow(sp.noise, 1.0 / 6.0);
    c.mu_tilde = sp.detuning / std::cbrt(sp.noise);
    c.f_tilde = (sp.drive * sp.drive - 1.0) / c.time_scale;
    return c;
}

CriticalScaledParams critical_scaled(double mu_tilde, double f_tilde, double noise)
{
    if (!(noise > 0.0)) {
        throw InputError("critical scaling needs D > 0");
    }
    return {mu_tilde, f_tilde, std::cbrt(noise * noise), std::pow(noise, 1.0 / 6.0)};
}

ScaledParams from_critical_scaling(const CriticalScaledParams& c, double noise, double occupation)
{
    if (!(noise > 0.0)) {
        throw InputError("critical scaling needs D > 0");
    }
    const double f2 = 1.0 + c.f_tilde * std::cbrt(noise * noise);
    if (f2 < 0.0) {
        throw InputError("f_tilde below -D^(-2/3) gives f_p^2 < 0");
    }
    ScaledParams sp;
    sp.detuning = c.mu_tilde * std::cbrt(noise);
    sp.drive = std::sqrt(f2);
    sp.noise = noise;
    sp.planck = noise / (occupation + 0.5);
    return sp;
}

std::vector<Nu1Point> nu1_curves(std::span<const double> f_tilde, std::span<const double> mu_tilde,
                                 const Nu1Options& opts)
{
    const double d = opts.reference_noise;
    const double scale = 1.0 / std::cbrt(d * d);
    std::vector<Nu1Point> out(f_tilde.size() * mu_tilde.size());
    parallel_for(out.size(), opts.threads, [&](std::size_t idx) {
        const double ft = f_tilde[idx / mu_tilde.size()];
        const double mt = mu_tilde[idx % mu_tilde.size()];
        const ScaledParams sp = from_critical_scaling(critical_scaled(mt, ft, d), d);
        const FokkerPlanckOperator op = build_operator(Potential::from_scaled(sp), d, opts.points,
                                                       Discretization::detailed_balance,
                                                       opts.support_threshold);
        const EigenResult r = lowest_decrements(op, 1, opts.refine);
        out[idx] = {mt, ft, r.nu1() * scale, opts.points, r.convergence.estimated_error * scale};
    });
    return out;
}

} // namespace paramosc
