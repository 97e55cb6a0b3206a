#include "paramosc/rwaflow.hpp"

#include "paramosc/error.hpp"
#include "paramosc/parallel.hpp"
#include "paramosc/potential.hpp"
#include "paramosc/rates.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace paramosc {

namespace {

double norm(FlowState x) { return std::hypot(x.q, x.p); }

struct NewtonResult {
    FlowState x;
    double residual = 0.0;
    bool converged = false;
};

NewtonResult newton(FlowState x, const ScaledParams& sp, const FixedPointOptions& opts)
{
    double r = norm(drift(x, sp));
    for (int it = 0; it < opts.max_iterations && r > opts.tolerance; ++it) {
        const FlowState f = drift(x, sp);
        const Jacobian2 j = jacobian(x, sp);
        const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if (det == 0.0 || !std::isfinite(det)) {
            break;
        }
        const double dq = -(j[1][1] * f.q - j[0][1] * f.p) / det;
        const double dp = -(-j[1][0] * f.q + j[0][0] * f.p) / det;
        double lambda = 1.0;
        FlowState trial{x.q + dq, x.p + dp};
        double rt = norm(drift(trial, sp));
        for (int h = 0; h < 30 && !(rt < r); ++h) {
            lambda *= 0.5;
            trial = {x.q + lambda * dq, x.p + lambda * dp};
            rt = norm(drift(trial, sp));
        }
        if (!(rt < r)) {
            break;
        }
        x = trial;
        r = rt;
    }
    return {x, r, r <= opts.accept};
}

} // namespace

FlowState drift(FlowState x, const ScaledParams& sp)
{
    const double s = sp.sign_gamma;
    const double r2 = x.q * x.q + x.p * x.p;
    const double w = r2 - sp.detuning;
    return {s * (x.p * w) + (sp.drive - 1.0) * x.q, -s * (x.q * w) - (sp.drive + 1.0) * x.p};
}

Jacobian2 jacobian(FlowState x, const ScaledParams& sp)
{
    const double s = sp.sign_gamma;
    const double r2 = x.q * x.q + x.p * x.p;
    const double w = r2 - sp.detuning;
    const double qp2 = 2.0 * x.q * x.p;
    return {{{s * qp2 + (sp.drive - 1.0), s * (w + 2.0 * x.p * x.p)},
             {-s * (w + 2.0 * x.q * x.q), -s * qp2 - (sp.drive + 1.0)}}};
}

std::array<std::complex<double>, 2> eigenvalues(const Jacobian2& j)
{
    const double half_tr = 0.5 * (j[0][0] + j[1][1]);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const double disc = half_tr * half_tr - det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        // Larger-magnitude root first, the other from det to avoid cancellation.
        const double big = half_tr >= 0.0 ? half_tr + root : half_tr - root;
        const double small = big != 0.0 ? det / big : 0.0;
        return {std::complex<double>(std::max(big, small)), std::complex<double>(std::min(big, small))};
    }
    const double im = std::sqrt(-disc);
    return {std::complex<double>(half_tr, im), std::complex<double>(half_tr, -im)};
}

std::string to_string(Stability s)
{
    switch (s) {
    case Stability::stable_node:
        return "stable_node";
    case Stability::stable_focus:
        return "stable_focus";
    case Stability::saddle:
        return "saddle";
    case Stability::unstable:
        return "unstable";
    case Stability::degenerate:
        return "degenerate";
    }
    return "unknown";
}

FlowFixedPoint classify(FlowState x, const ScaledParams& sp, double det_tol)
{
    FlowFixedPoint fp;
    fp.state = x;
    fp.radius_sq = x.q * x.q + x.p * x.p;
    fp.residual = norm(drift(x, sp));
    const Jacobian2 j = jacobian(x, sp);
    fp.eigen = eigenvalues(j);
    const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    const double scale = std::abs(j[0][0]) + std::abs(j[0][1]) + std::abs(j[1][0]) + std::abs(j[1][1]);
    if (std::abs(det) <= det_tol * scale * scale) {
        fp.stability = Stability::degenerate;
    } else if (det < 0.0) {
        fp.stability = Stability::saddle;
    } else if (fp.eigen[0].real() < 0.0 && fp.eigen[1].real() < 0.0) {
        fp.stability = fp.eigen[0].imag() == 0.0 ? Stability::stable_node : Stability::stable_focus;
    } else {
        fp.stability = Stability::unstable;
    }
    return fp;
}

std::vector<FlowFixedPoint> find_flow_fixed_points(const ScaledParams& sp,
                                                   const FixedPointOptions& opts)
{
    const double s = sp.sign_gamma;
    const double mu = sp.detuning;
    const double f = sp.drive;

    std::vector<FlowState> required{{0.0, 0.0}};
    std::vector<FlowState> extra;
    if (f >= 1.0) {
        const double mu_b = std::sqrt(f * f - 1.0);
        for (double a : {mu_b, -mu_b}) {
            // From the fixed-point equations: s(R^2 - mu) = A with A^2 = f^2 - 1,
            // P = -A Q / (f + 1) and Q^2 = R^2 (f + 1) / (2 f).
            const double r2 = mu + s * a;
            if (!(r2 > 0.0)) {
                continue;
            }
            const double q = std::sqrt(r2 * (f + 1.0) / (2.0 * f));
            required.push_back({q, -a * q / (f + 1.0)});
            required.push_back({-q, a * q / (f + 1.0)});
            const double r = std::sqrt(r2);
            for (std::size_t k = 0; k < opts.seeds_per_circle; ++k) {
                const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                                  static_cast<double>(opts.seeds_per_circle);
                extra.push_back({r * std::cos(th), r * std::sin(th)});
            }
        }
    }

    std::vector<FlowFixedPoint> found;
    auto keep = [&](FlowState x) {
        const double scale = std::max(1.0, norm(x));
        for (const auto& fp : found) {
            if (std::hypot(fp.state.q - x.q, fp.state.p - x.p) < 1e-9 * scale) {
                return;
            }
        }
        found.push_back(classify(x, sp));
    };

    for (const FlowState& seed : required) {
        NewtonResult nr = newton(seed, sp, opts);
        for (int k = 1; !nr.converged && k <= opts.restarts; ++k) {
            const double eps = 1e-3 * k * std::max(1.0, norm(seed));
            nr = newton({seed.q + eps, seed.p - eps}, sp, opts);
        }
        if (!nr.converged) {
            throw NewtonFailure("fixed point near (" + std::to_string(seed.q) + ", " +
                                std::to_string(seed.p) + ") not converged: residual " +
                                std::to_string(nr.residual));
        }
        keep(nr.x);
    }
    for (const FlowState& seed : extra) {
        const NewtonResult nr = newton(seed, sp, opts);
        if (nr.converged) {
            keep(nr.x);
        }
    }
    std::sort(found.begin(), found.end(), [](const FlowFixedPoint& a, const FlowFixedPoint& b) {
        return std::tie(a.radius_sq, a.state.q, a.state.p) <
               std::tie(b.radius_sq, b.state.q, b.state.p);
    });
    return found;
}

std::size_t stable_count(const ScaledParams& sp)
{
    FixedPointOptions opts;
    opts.seeds_per_circle = 0;
    std::size_t n = 0;
    for (const auto& fp : find_flow_fixed_points(sp, opts)) {
        n += fp.stable() ? 1 : 0;
    }
    return n;
}

namespace {

/// Bisection on a monotone step of `count` between lo (count < level) and
/// hi (count >= level).
template <class Count>
double bisect_count(double lo, double hi, std::size_t level, double tol, Count&& count)
{
    if (count(lo) >= level || count(hi) < level) {
        throw ConvergenceFailure("bifurcation bracket does not straddle a transition");
    }
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        (count(mid) >= level ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TracedDiagram trace_bifurcation_diagram(std::span<const double> drives, double tol, unsigned threads)
{
    if (drives.empty()) {
        throw InputError("bifurcation: drive grid is empty");
    }
    for (double f : drives) {
        if (!(f > 1.0) || !std::isfinite(f)) {
            throw InputError("bifurcation: traced drives must exceed 1");
        }
    }
    TracedDiagram out;
    out.rows.resize(drives.size());
    parallel_for(drives.size(), threads, [&](std::size_t i) {
        const double f = drives[i];
        auto count = [f](double mu) {
            ScaledParams sp;
            sp.detuning = mu;
            sp.drive = f;
            return stable_count(sp);
        };
        TracedRow& row = out.rows[i];
        row.drive = f;
        row.lower = bisect_count(-(f + 1.0), 0.0, 1, tol, [&](double mu) {
            // Mirror so that the count increases with the argument.
            return count(mu) >= 2 ? std::size_t{1} : std::size_t{0};
        });
        row.upper = bisect_count(0.0, f + 1.0, 3, tol, count);
        row.lower_exact = -bifurcation_detuning(f);
        row.upper_exact = bifurcation_detuning(f);
        row.phase = phase_boundary_numeric(f);
    });

    const double f_min = *std::min_element(drives.begin(), drives.end());
    const double mu_b_min = bifurcation_detuning(f_min);
    for (double mu : {0.5 * mu_b_min, mu_b_min, 0.25, 0.5, 1.0}) {
        auto count = [mu](double f) {
            ScaledParams sp;
            sp.detuning = mu;
            sp.drive = f;
            return stable_count(sp);
        };
        const double f_hi = 0.5 * (1.0 + std::sqrt(1.0 + mu * mu));
        out.threshold_line.push_back({mu, bisect_count(0.5, f_hi, 3, tol, count)});
    }

    for (const TracedRow& row : out.rows) {
        out.max_error = std::max({out.max_error, std::abs(row.lower - row.lower_exact),
                                  std::abs(row.upper - row.upper_exact)});
        if (row.drive == f_min) {
            out.meeting_gap = std::max({out.meeting_gap, std::abs(row.lower), std::abs(row.upper)});
        }
    }
    for (const auto& pt : out.threshold_line) {
        out.meeting_gap = std::max(out.meeting_gap, std::abs(pt[1] - 1.0));
    }
    return out;
}

double adiabatic_momentum(double q, const ScaledParams& sp)
{
    // dP/dtau = 0:  s Q P^2 + (f + 1) P + s Q (Q^2 - mu) = 0.
    const double s = sp.sign_gamma;
    const double b = sp.drive + 1.0;
    const double c = s * q * (q * q - sp.detuning);
    const double disc = b * b - 4.0 * q * q * (q * q - sp.detuning);
    if (!(disc >= 0.0) || !(b > 0.0)) {
        throw BranchLost("no real P with dP/dtau = 0 at Q = " + std::to_string(q));
    }
    return -2.0 * c / (b + std::sqrt(disc));
}

double adiabatic_drift(double q, const ScaledParams& sp)
{
    return drift({q, adiabatic_momentum(q, sp)}, sp).q;
}

AdiabaticComparison compare_adiabatic(const ScaledParams& sp, std::size_t points, double factor)
{
    const double mu_b = bifurcation_detuning(sp.drive);
    const double x = sp.detuning + mu_b;
    if (!(x > 0.0) || points < 2) {
        throw InputError("adiabatic comparison needs mu_p + mu_B > 0 and >= 2 points");
    }
    const Potential u = Potential::from_control(sp.detuning, sp.drive);
    AdiabaticComparison cmp;
    cmp.half_width = factor * std::sqrt(x);
    for (std::size_t i = 0; i < points; ++i) {
        const double q = -cmp.half_width +
                         2.0 * cmp.half_width * static_cast<double>(i) / static_cast<double>(points - 1);
        const double slope = u.slope(q);
        cmp.max_deviation = std::max(cmp.max_deviation, std::abs(adiabatic_drift(q, sp) + slope));
        cmp.scale = std::max(cmp.scale, std::abs(slope));
    }
    cmp.relative_deviation = cmp.max_deviation / cmp.scale;
    return cmp;
}

FlowState relax(FlowState start, const ScaledParams& sp, double t_end, double tol)
{
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 2>;
    State x{start.q, start.p};
    auto rhs = [&sp](const State& y, State& dy, double) {
        const FlowState d = drift({y[0], y[1]}, sp);
        dy[0] = d.q;
        dy[1] = d.p;
    };
    auto stepper = ode::make_controlled(tol, tol, ode::runge_kutta_dopri5<State>());
    ode::integrate_adaptive(stepper, rhs, x, 0.0, t_end, 0.01);
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
        throw NonFiniteState("flow integration diverged");
    }
    return {x[0], x[1]};
}

} // namespace paramosc
