#include "paramosc/potential.hpp"

#include "paramosc/error.hpp"
#include "paramosc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace paramosc {

Potential::Potential(double c2, double c4, double c6) : coeffs_{c2, c4, c6}
{
    if (!std::isfinite(c2) || !std::isfinite(c4) || !std::isfinite(c6)) {
        throw InputError("potential coefficients must be finite");
    }
}

Potential Potential::from_control(double detuning, double drive)
{
    const double c2 = (detuning * detuning - (drive * drive - 1.0)) / 4.0;
    Potential p(c2, -detuning / 4.0, 1.0 / 12.0);
    p.detuning_ = detuning;
    p.drive_ = drive;
    return p;
}

Potential Potential::from_scaled(const ScaledParams& sp)
{
    return from_control(sp.detuning, sp.drive);
}

Potential Potential::quadratic(double stiffness)
{
    return Potential(0.5 * stiffness, 0.0, 0.0);
}

double Potential::value(double q) const
{
    return value_sq(q * q);
}

double Potential::slope(double q) const
{
    const double x = q * q;
    return q * (2.0 * coeffs_.c2 + x * (4.0 * coeffs_.c4 + x * 6.0 * coeffs_.c6));
}

double Potential::curvature(double q) const
{
    const double x = q * q;
    return 2.0 * coeffs_.c2 + x * (12.0 * coeffs_.c4 + x * 30.0 * coeffs_.c6);
}

PotentialEval Potential::evaluate(double q) const
{
    return {value(q), slope(q), curvature(q)};
}

double Potential::difference_sq(double x_from, double x_to) const
{
    const double sum = x_to + x_from;
    const double sq = x_to * x_to + x_to * x_from + x_from * x_from;
    return (x_to - x_from) * (coeffs_.c2 + coeffs_.c4 * sum + coeffs_.c6 * sq);
}

double Potential::max_abs_curvature(double half_width) const
{
    const double l2 = half_width * half_width;
    auto at = [this](double x) {
        return std::abs(2.0 * coeffs_.c2 + x * (12.0 * coeffs_.c4 + x * 30.0 * coeffs_.c6));
    };
    double m = std::max(at(0.0), at(l2));
    if (coeffs_.c6 != 0.0) {
        const double xv = -coeffs_.c4 / (5.0 * coeffs_.c6);
        if (xv > 0.0 && xv < l2) {
            m = std::max(m, at(xv));
        }
    }
    return m;
}

double bifurcation_detuning(double drive)
{
    if (!(drive >= 1.0)) {
        throw InputError("bifurcation lines exist only for f_p >= 1");
    }
    return std::sqrt(drive * drive - 1.0);
}

std::string to_string(Regime r)
{
    switch (r) {
    case Regime::monostable:
        return "monostable";
    case Regime::bistable:
        return "bistable";
    case Regime::tristable:
        return "tristable";
    }
    return "unknown";
}

std::string to_string(ExtremumKind k)
{
    switch (k) {
    case ExtremumKind::minimum:
        return "minimum";
    case ExtremumKind::maximum:
        return "maximum";
    case ExtremumKind::degenerate:
        return "degenerate";
    }
    return "unknown";
}

std::vector<Extremum> ExtremumSet::all() const
{
    std::vector<Extremum> out = attractors;
    out.insert(out.end(), saddles.begin(), saddles.end());
    out.insert(out.end(), degenerate.begin(), degenerate.end());
    std::sort(out.begin(), out.end(),
              [](const Extremum& a, const Extremum& b) { return a.position < b.position; });
    return out;
}

namespace {

// Real roots of U'(Q)/Q = 2 c2 + 4 c4 x + 6 c6 x^2 in x = Q^2.
std::vector<double> stationary_levels(const Potential& u)
{
    if (u.detuning() && u.drive()) {
        const double mu = *u.detuning();
        const double f = *u.drive();
        if (f < 1.0) {
            return {};
        }
        const double mub = std::sqrt(f * f - 1.0);
        return {mu - mub, mu + mub};
    }
    const double a = 6.0 * u.c6();
    const double b = 4.0 * u.c4();
    const double c = 2.0 * u.c2();
    if (a == 0.0) {
        if (b == 0.0) {
            return {};
        }
        return {-c / b};
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        return {};
    }
    const double s = std::sqrt(disc);
    const double t = -0.5 * (b + std::copysign(s, b));
    if (t == 0.0) {
        return {0.0, 0.0};
    }
    std::vector<double> r{t / a, c / t};
    std::sort(r.begin(), r.end());
    return r;
}

Extremum classify(const Potential& u, double q, bool degenerate)
{
    Extremum e;
    e.position = q;
    e.value = u.value(q);
    e.curvature = u.curvature(q);
    if (degenerate || e.curvature == 0.0) {
        e.kind = ExtremumKind::degenerate;
    } else {
        e.kind = e.curvature > 0.0 ? ExtremumKind::minimum : ExtremumKind::maximum;
    }
    return e;
}

} // namespace

ExtremumSet find_extrema(const Potential& u, double merge_tol)
{
    std::vector<double> levels = stationary_levels(u);

    ExtremumSet set;
    bool origin_degenerate = false;
    std::vector<std::pair<double, bool>> nonzero; // (x, degenerate)
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const double x = levels[i];
        if (std::abs(x) < merge_tol) {
            origin_degenerate = true;
            continue;
        }
        if (x < 0.0) {
            continue;
        }
        bool merged = false;
        for (auto& [y, flag] : nonzero) {
            if (std::abs(x - y) < merge_tol) {
                flag = true;
                merged = true;
            }
        }
        if (!merged) {
            nonzero.emplace_back(x, false);
        }
    }

    std::vector<Extremum> found;
    found.push_back(classify(u, 0.0, origin_degenerate));
    for (const auto& [x, flag] : nonzero) {
        const double q = std::sqrt(x);
        found.push_back(classify(u, -q, flag));
        found.push_back(classify(u, q, flag));
    }
    std::sort(found.begin(), found.end(),
              [](const Extremum& a, const Extremum& b) { return a.position < b.position; });

    for (const Extremum& e : found) {
        switch (e.kind) {
        case ExtremumKind::minimum:
            set.attractors.push_back(e);
            break;
        case ExtremumKind::maximum:
            set.saddles.push_back(e);
            break;
        case ExtremumKind::degenerate:
            set.degenerate.push_back(e);
            set.degeneracy = true;
            break;
        }
    }
    switch (set.attractors.size()) {
    case 3:
        set.regime = Regime::tristable;
        break;
    case 2:
        set.regime = Regime::bistable;
        break;
    default:
        set.regime = Regime::monostable;
        break;
    }
    return set;
}

BifurcationDiagram bifurcation_boundaries(std::span<const double> drives,
                                          const std::function<double(double)>& phase_line)
{
    BifurcationDiagram d;
    d.rows.reserve(drives.size());
    for (double f : drives) {
        const double mub = bifurcation_detuning(f);
        BoundaryPoint p{f, -mub, mub, 0.0};
        if (phase_line && f > 1.0) {
            p.phase = phase_line(f);
        }
        d.rows.push_back(p);
    }
    return d;
}

double support_half_width(const Potential& u, double noise, double threshold)
{
    if (!(noise > 0.0)) {
        throw InputError("support rule needs D > 0");
    }
    if (u.c6() < 0.0 || (u.c6() == 0.0 && u.c4() < 0.0) ||
        (u.c6() == 0.0 && u.c4() == 0.0 && u.c2() <= 0.0)) {
        throw InputError("potential is not confining");
    }
    double x_outer = 0.0;
    for (double x : stationary_levels(u)) {
        x_outer = std::max(x_outer, x);
    }
    if (u.c6() > 0.0) {
        x_outer = std::max(x_outer, -u.c4() / (3.0 * u.c6()));
    }
    const double q_outer = std::sqrt(x_outer);

    double u_min = 0.0;
    for (const Extremum& e : find_extrema(u).attractors) {
        u_min = std::min(u_min, e.value);
    }
    const double level = std::max(u_min, u.value(q_outer)) + threshold * noise;

    double lo = q_outer;
    double hi = std::max(q_outer, 1e-3);
    while (u.value(hi) < level) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw NumericalError("support rule: potential never reaches the threshold");
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (u.value(mid) < level ? lo : hi) = mid;
    }
    return hi;
}

StationaryDensity stationary_distribution(const Potential& u, double noise, const GridSpec& grid)
{
    if (!(noise > 0.0) || !std::isfinite(noise)) {
        throw InputError("stationary distribution needs D > 0");
    }
    grid.validate();
    StationaryDensity s;
    s.q = grid.nodes();
    s.potential.resize(grid.points);
    simd::potential_values(s.q, s.potential, u.coeffs());

    const double u_min = *std::min_element(s.potential.begin(), s.potential.end());
    std::vector<double> w(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        w[i] = std::exp(-(s.potential[i] - u_min) / noise);
    }
    const double h = grid.step();
    const double z_shifted = simpson(w, h);
    s.log_partition = std::log(z_shifted) - u_min / noise;
    s.density.resize(grid.points);
    for (std::size_t i = 0; i < grid.points; ++i) {
        s.density[i] = w[i] / z_shifted;
    }

    // Laplace tail beyond each end: exp(-U/D) D / U'.
    const double edge_slope = u.slope(grid.q_max);
    if (edge_slope > 0.0) {
        s.tail_mass = 2.0 * w.back() * noise / edge_slope / z_shifted;
    } else {
        s.tail_mass = 2.0 * w.back() * grid.q_max / z_shifted;
    }
    if (s.tail_mass > 1e-10) {
        s.warnings.push_back("grid truncates an estimated probability mass of " +
                             std::to_string(s.tail_mass));
    }
    return s;
}

StationaryDensity stationary_distribution(const Potential& u, double noise, std::size_t points)
{
    return stationary_distribution(u, noise,
                                   GridSpec::symmetric(support_half_width(u, noise), points));
}

} // namespace paramosc
