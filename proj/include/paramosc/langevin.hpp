#pragma once

#include "paramosc/params.hpp"
#include "paramosc/potential.hpp"
#include "paramosc/rates.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace paramosc {

/// Overdamped Langevin dynamics dQ = -U'(Q) dtau + sqrt(2D) dW, integrated
/// with Euler-Maruyama. The noise is additive, so the Ito and Stratonovich
/// readings coincide.
struct TrajectoryConfig {
    double dt = 1e-3;           ///< step in units of 1/Gamma
    std::uint64_t steps = 1000;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;   ///< trajectory index within the seed
    double initial = 0.0;
    std::uint64_t burn_in = 0;  ///< steps discarded before recording
    double noise = 1e-3;        ///< D; zero gives gradient descent
    std::uint64_t decimation = 1;
};

/// max|U''| over the region the dynamics explores from q0 at noise D.
double stiffness_bound(const Potential& u, double noise, double q0);

/// Throws StepTooLarge unless dt * stiffness_bound <= max_product.
void check_step(const Potential& u, double noise, double dt, double q0, double max_product = 0.1);

/// Welford accumulator; merge() is exact up to floating-point reassociation.
struct RunningMoments {
    std::uint64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const RunningMoments& other);
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

struct Trajectory {
    std::vector<double> time;
    std::vector<double> q; ///< every `decimation`-th state after burn-in
    RunningMoments moments; ///< over all recorded (undecimated) steps
};

Trajectory integrate(const Potential& u, const TrajectoryConfig& cfg);

enum class Passage {
    commitment,     ///< reach the destination attractor
    saddle_crossing ///< reach the saddle
};

struct MfptConfig {
    double dt = 1e-2;
    std::uint64_t seed = 1;
    std::size_t walkers = 64;
    std::size_t target_events = 500;
    std::size_t min_events = 200;
    std::uint64_t max_steps = 100'000'000; ///< per walker
    Passage passage = Passage::commitment;
    bool from_negative = false;            ///< start from -Q_a instead of +Q_a
    unsigned threads = 1;
};

struct MfptEstimate {
    double mean_time = 0.0;
    double standard_error = 0.0;
    std::size_t events = 0;
    std::size_t censored = 0;
    double rate = 0.0;            ///< 1 / mean_time
    double rate_error = 0.0;      ///< propagated standard error of rate
    double barrier_ratio = 0.0;   ///< Delta U / D of the channel
    bool low_confidence = false;  ///< events < min_events
    bool budget_exhausted = false;
    bool barrier_out_of_range = false; ///< Delta U / D outside [3, 8]
};

/// Repeated first-passage runs from the channel's attractor.
MfptEstimate estimate_mfpt(const Potential& u, const ScaledParams& sp, Channel channel,
                           const MfptConfig& cfg);

enum class Observable { position, position_squared };

struct AcfConfig {
    double dt = 1e-2;
    std::uint64_t seed = 1;
    std::size_t chains = 16;
    std::uint64_t samples = 20000;     ///< recorded per chain
    std::uint64_t sample_stride = 100; ///< steps between samples
    std::size_t max_lag = 400;         ///< in samples
    std::size_t lag_stride = 1;        ///< in samples
    std::uint64_t burn_in = 0;         ///< initial burn-in steps
    int burn_in_rounds = 3;            ///< reruns allowed to reach 10 / nu
    Observable observable = Observable::position;
    double fit_upper = 0.5;
    double fit_lower = 0.05;
    unsigned threads = 1;
};

struct AcfEstimate {
    std::vector<double> lags;           ///< in units of 1/Gamma
    std::vector<double> autocovariance; ///< lag 0 is the sample variance
    std::vector<double> normalized;
    double decrement = 0.0;             ///< fitted nu
    double window_start = 0.0;
    double window_end = 0.0;
    std::size_t fit_points = 0;
    double residual = 0.0;              ///< acf^2-weighted rms of ln(acf) about the fit
    std::uint64_t burn_in_used = 0;
};

/// Decay rate of the stationary autocorrelation from an ensemble of chains
/// started from rho_st. Throws FitWindowEmpty when fewer than three lags fall
/// inside [fit_lower, fit_upper].
AcfEstimate estimate_acf_decrement(const Potential& u, double noise, const AcfConfig& cfg);

/// Log-linear fit of a normalized autocorrelation on its [lower, upper] window.
void fit_decay(AcfEstimate& est, double lower, double upper);

struct SamplingConfig {
    double dt = 1e-2;
    std::uint64_t seed = 1;
    std::size_t chains = 16;
    std::uint64_t steps = 100000;  ///< per chain
    std::uint64_t sample_stride = 10;
    unsigned threads = 1;
};

struct HistogramResult {
    std::vector<double> edges;
    std::vector<double> density;   ///< sample histogram, integrates to 1
    std::vector<double> reference; ///< rho_st averaged over each bin
    std::vector<double> z_scores;  ///< per bin, chain-to-chain standard errors
    double tv_distance = 0.0;
    double max_abs_z = 0.0;
    double mean = 0.0;
    double mean_error = 0.0;
    double variance = 0.0;
    double kurtosis = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t outside = 0;
};

HistogramResult stationary_histogram(const Potential& u, double noise, const SamplingConfig& cfg,
                                     std::size_t bins = 60);

struct OccupationEstimate {
    std::vector<double> attractors; ///< positions, ascending
    std::vector<double> fractions;
    std::vector<double> errors;     ///< chain-to-chain standard errors
    std::uint64_t samples = 0;
};

/// Fraction of time spent in each attractor's basin, the basins being split
/// at the saddles.
OccupationEstimate basin_occupations(const Potential& u, double noise, const SamplingConfig& cfg);

} // namespace paramosc
