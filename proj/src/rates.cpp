#include "paramosc/rates.hpp"

#include "paramosc/error.hpp"

#include <cmath>
#include <numbers>

namespace paramosc {

std::string to_string(Channel c)
{
    switch (c) {
    case Channel::bistable:
        return "bistable";
    case Channel::tristable_escape:
        return "tristable_escape";
    case Channel::tristable_entry:
        return "tristable_entry";
    }
    return "unknown";
}

std::string to_string(CellStatus s)
{
    switch (s) {
    case CellStatus::ok:
        return "ok";
    case CellStatus::absent:
        return "absent";
    case CellStatus::near_bifurcation:
        return "near-bifurcation";
    }
    return "unknown";
}

namespace {

struct ChannelPoints {
    Extremum attractor;
    Extremum saddle;
};

const Extremum* positive_member(const std::vector<Extremum>& v, bool want_origin)
{
    for (const Extremum& e : v) {
        if (want_origin ? e.position == 0.0 : e.position > 0.0) {
            return &e;
        }
    }
    return nullptr;
}

ChannelPoints locate(const ExtremumSet& ex, Channel channel)
{
    const Extremum* a = nullptr;
    const Extremum* s = nullptr;
    switch (channel) {
    case Channel::bistable:
        if (ex.regime == Regime::bistable) {
            a = positive_member(ex.attractors, false);
            s = positive_member(ex.saddles, true);
        }
        break;
    case Channel::tristable_escape:
        if (ex.regime == Regime::tristable) {
            a = positive_member(ex.attractors, false);
            s = positive_member(ex.saddles, false);
        }
        break;
    case Channel::tristable_entry:
        if (ex.regime == Regime::tristable) {
            a = positive_member(ex.attractors, true);
            s = positive_member(ex.saddles, false);
        }
        break;
    }
    if (a == nullptr || s == nullptr) {
        throw MissingChannel("regime " + to_string(ex.regime) + " has no " + to_string(channel) +
                             " channel");
    }
    return {*a, *s};
}

} // namespace

RateResult switching_rate(const Potential& u, const ScaledParams& sp, Channel channel,
                          double curvature_tol)
{
    validate(sp);
    const ExtremumSet ex = find_extrema(u);
    if (ex.degeneracy && !ex.degenerate.empty()) {
        throw BifurcationProximity("parameters lie on a bifurcation line");
    }
    const ChannelPoints pts = locate(ex, channel);
    const double ka = pts.attractor.curvature;
    const double ks = pts.saddle.curvature;
    if (std::abs(ka) < curvature_tol || std::abs(ks) < curvature_tol) {
        throw BifurcationProximity("curvature below " + std::to_string(curvature_tol) +
                                   " at the attractor or saddle");
    }

    RateResult r;
    r.channel = channel;
    r.attractor = pts.attractor.position;
    r.saddle = pts.saddle.position;
    r.barrier = u.difference_sq(pts.attractor.position_sq(), pts.saddle.position_sq());
    r.activation = r.barrier / sp.occupation_factor();
    r.prefactor = std::sqrt(std::abs(ks) * ka) / (2.0 * std::numbers::pi);
    r.rate = r.prefactor * std::exp(-r.activation / sp.planck);
    return r;
}

std::vector<SurfaceCell> activation_energy_surface(std::span<const double> detunings,
                                                   std::span<const double> drives,
                                                   double occupation, double planck,
                                                   double curvature_tol)
{
    ScaledParams sp;
    sp.planck = planck;
    sp.noise = planck * (occupation + 0.5);

    std::vector<SurfaceCell> out;
    out.reserve(detunings.size() * drives.size());
    for (double f : drives) {
        for (double mu : detunings) {
            SurfaceCell cell;
            cell.detuning = mu;
            cell.drive = f;
            sp.detuning = mu;
            sp.drive = f;
            const Potential u = Potential::from_scaled(sp);
            const ExtremumSet ex = find_extrema(u);
            cell.regime = ex.regime;
            try {
                if (ex.regime == Regime::bistable && !ex.degeneracy) {
                    const RateResult r = switching_rate(u, sp, Channel::bistable, curvature_tol);
                    cell.activation = r.activation;
                    cell.prefactor = r.prefactor;
                    cell.rate = r.rate;
                    cell.status = CellStatus::ok;
                } else if (ex.regime == Regime::tristable && !ex.degeneracy) {
                    const RateResult esc =
                        switching_rate(u, sp, Channel::tristable_escape, curvature_tol);
                    const RateResult ent =
                        switching_rate(u, sp, Channel::tristable_entry, curvature_tol);
                    cell.activation_escape = esc.activation;
                    cell.activation_entry = ent.activation;
                    cell.prefactor = esc.prefactor;
                    cell.rate = esc.rate;
                    cell.status = CellStatus::ok;
                } else if (ex.degeneracy) {
                    cell.status = CellStatus::near_bifurcation;
                }
            } catch (const BifurcationProximity&) {
                cell = SurfaceCell{mu, f, ex.regime, CellStatus::near_bifurcation, {}, {}, {}, {}, {}};
            }
            out.push_back(cell);
        }
    }
    return out;
}

double phase_boundary(double drive)
{
    if (!(drive > 1.0)) {
        throw InputError("phase boundary requires f_p > 1");
    }
    return 2.0 * std::sqrt(drive * drive - 1.0);
}

double phase_boundary_numeric(double drive, double tol)
{
    if (!(drive > 1.0)) {
        throw InputError("phase boundary requires f_p > 1");
    }
    const double mub = std::sqrt(drive * drive - 1.0);
    // g(mu) = Delta U_escape - Delta U_entry: positive just inside the
    // tristable region (entry barrier ~ 0), negative far from it.
    auto gap = [drive](double mu) {
        const Potential u = Potential::from_control(mu, drive);
        const ExtremumSet ex = find_extrema(u, 0.0);
        const ChannelPoints esc = locate(ex, Channel::tristable_escape);
        const ChannelPoints ent = locate(ex, Channel::tristable_entry);
        const double du_esc = u.difference_sq(esc.attractor.position_sq(), esc.saddle.position_sq());
        const double du_ent = u.difference_sq(ent.attractor.position_sq(), ent.saddle.position_sq());
        return du_esc - du_ent;
    };
    double lo = mub * (1.0 + 1e-9);
    double hi = 2.0 * lo;
    while (gap(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            throw ConvergenceFailure("phase boundary bracket not found");
        }
    }
    for (int it = 0; it < 400 && hi - lo > tol * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BalanceKinetics balance_kinetics(double w01, double w10)
{
    if (!(w01 > 0.0) || !(w10 > 0.0)) {
        throw InputError("balance kinetics needs positive rates");
    }
    BalanceKinetics k;
    k.w01 = w01;
    k.w10 = w10;
    k.decrements = {w10, 2.0 * w01 + w10};
    const double norm = w10 + 2.0 * w01;
    k.populations = {w10 / norm, w01 / norm, w01 / norm};
    return k;
}

} // namespace paramosc
