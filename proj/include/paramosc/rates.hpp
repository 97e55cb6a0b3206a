#pragma once

#include "paramosc/params.hpp"
#include "paramosc/potential.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace paramosc {

/// Which stable state the system leaves and over which barrier.
enum class Channel {
    bistable,        ///< period-two state -> other period-two state, over Q = 0
    tristable_escape,///< period-two state -> zero-amplitude state
    tristable_entry, ///< zero-amplitude state -> one period-two state
};

std::string to_string(Channel c);

struct RateResult {
    Channel channel = Channel::bistable;
    double attractor = 0.0;  ///< Q_a (the positive member of a +- pair)
    double saddle = 0.0;     ///< Q_S adjacent to Q_a
    double barrier = 0.0;    ///< Delta U = U(Q_S) - U(Q_a)
    double activation = 0.0; ///< R_A = Delta U / (nbar + 1/2)
    double prefactor = 0.0;  ///< Omega_sw, units of Gamma
    double rate = 0.0;       ///< W_sw = Omega_sw exp(-R_A / lambda_p), units of Gamma

    /// (nbar + 1/2) R_A, equal to Delta U.
    double activation_tilde() const { return barrier; }
};

/// Kramers rate over the channel's barrier. Throws MissingChannel when the
/// regime lacks the channel and BifurcationProximity when either curvature
/// is below curvature_tol in magnitude.
RateResult switching_rate(const Potential& u, const ScaledParams& sp, Channel channel,
                          double curvature_tol = 1e-6);

/// Rate in 1/s given the lab decay rate Gamma.
inline double to_lab_rate(double scaled_rate, double decay_rate) { return scaled_rate * decay_rate; }

enum class CellStatus { ok, absent, near_bifurcation };
std::string to_string(CellStatus s);

struct SurfaceCell {
    double detuning = 0.0;
    double drive = 0.0;
    Regime regime = Regime::monostable;
    CellStatus status = CellStatus::absent;
    std::optional<double> activation;        ///< R_A (bistable)
    std::optional<double> activation_entry;  ///< R_A0 (tristable)
    std::optional<double> activation_escape; ///< R_A1 (tristable)
    std::optional<double> prefactor;         ///< bistable channel, or escape channel when tristable
    std::optional<double> rate;
};

/// R_A over a (mu_p, f_p) grid; rows are ordered drive-major. Cells whose
/// regime lacks a channel leave those fields empty; cells too close to a
/// bifurcation line are marked near_bifurcation with every field empty.
std::vector<SurfaceCell> activation_energy_surface(std::span<const double> detunings,
                                                   std::span<const double> drives,
                                                   double occupation, double planck,
                                                   double curvature_tol = 1e-6);

/// Equal-occupation detuning mu* = 2 (f_p^2 - 1)^(1/2), f_p > 1.
double phase_boundary(double drive);

/// Same line found by bisection on Delta U_escape(mu) = Delta U_entry(mu),
/// with both barriers taken from located extrema.
double phase_boundary_numeric(double drive, double tol = 1e-13);

struct BalanceKinetics {
    double w01 = 0.0;                     ///< zero-amplitude -> one period-two state
    double w10 = 0.0;                     ///< period-two -> zero-amplitude
    std::array<double, 2> decrements{};   ///< {W10, 2 W01 + W10}
    std::array<double, 3> populations{};  ///< stationary (w0, w1, w2)

    double slowest() const { return decrements[0]; }
};

BalanceKinetics balance_kinetics(double w01, double w10);

} // namespace paramosc
