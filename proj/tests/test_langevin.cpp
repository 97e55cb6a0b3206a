#include "oracles.hpp"

#include "paramosc/commands.hpp"
#include "paramosc/error.hpp"
#include "paramosc/fpe.hpp"
#include "paramosc/langevin.hpp"

#include <doctest.h>

#include <cmath>

using namespace paramosc;

namespace {

double safe_dt(const Potential& u, double noise, double q0 = 0.0)
{
    return 0.05 / stiffness_bound(u, noise, q0);
}

} // namespace

TEST_CASE("zero noise is gradient descent")
{
    TrajectoryConfig cfg;
    cfg.noise = 0.0;
    cfg.dt = 0.01;
    cfg.steps = 500;
    cfg.initial = 0.8;
    const auto tr = integrate(Potential::quadratic(2.0), cfg);
    CHECK(tr.q.back() == doctest::Approx(0.8 * std::pow(1.0 - 0.02, 500)).epsilon(1e-12));

    // Relaxes onto the positive attractor of a bistable well.
    const Potential u = Potential::from_control(0.0, std::sqrt(2.0));
    cfg.initial = 0.3;
    cfg.steps = 20000;
    CHECK(integrate(u, cfg).q.back() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("step guard")
{
    TrajectoryConfig cfg;
    cfg.dt = 1.0;
    cfg.noise = 0.01;
    CHECK_THROWS_AS(integrate(Potential::quadratic(1.0), cfg), StepTooLarge);
    CHECK_THROWS_AS(check_step(Potential::quadratic(1.0), 0.01, -1.0, 0.0), InputError);
    CHECK_NOTHROW(check_step(Potential::quadratic(1.0), 0.01, 0.05, 0.0));
}

TEST_CASE("running moments merge")
{
    RunningMoments a, b, all;
    for (int i = 0; i < 100; ++i) {
        const double x = std::sin(i * 0.7);
        (i < 37 ? a : b).add(x);
        all.add(x);
    }
    a.merge(b);
    CHECK(a.count == all.count);
    CHECK(a.mean == doctest::Approx(all.mean).epsilon(1e-13));
    CHECK(a.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("Ornstein-Uhlenbeck variance")
{
    const double kappa = 1.0;
    const double d = 0.01;
    TrajectoryConfig cfg;
    cfg.noise = d;
    cfg.dt = 0.01;
    cfg.steps = 2'000'000;
    cfg.burn_in = 1000;
    cfg.decimation = 1000;
    cfg.seed = 5;
    const auto tr = integrate(Potential::quadratic(kappa), cfg);
    // Euler-Maruyama stationary variance of the discrete chain.
    const double exact = oracle::ou_variance(kappa, d) / (1.0 - 0.5 * kappa * cfg.dt);
    // Effective sample count from the correlation time 1/kappa.
    const double n_eff = cfg.steps * cfg.dt * kappa / 2.0;
    const double se = exact * std::sqrt(2.0 / n_eff);
    CHECK(std::abs(tr.moments.variance() - exact) < 3.0 * se);
    CHECK(std::abs(tr.moments.mean) < 3.0 * std::sqrt(exact / n_eff));
}

TEST_CASE("streams are deterministic and independent of thread count")
{
    TrajectoryConfig cfg;
    cfg.noise = 0.01;
    cfg.dt = 0.01;
    cfg.steps = 10000;
    cfg.decimation = 10;
    const auto a = integrate(Potential::quadratic(1.0), cfg);
    const auto b = integrate(Potential::quadratic(1.0), cfg);
    CHECK(a.q == b.q);
    cfg.stream = 1;
    CHECK(integrate(Potential::quadratic(1.0), cfg).q != a.q);

    SamplingConfig s;
    s.chains = 12;
    s.steps = 5000;
    s.threads = 1;
    const auto h1 = stationary_histogram(Potential::quadratic(1.0), 0.01, s);
    s.threads = 3;
    const auto h3 = stationary_histogram(Potential::quadratic(1.0), 0.01, s);
    CHECK(h1.density == h3.density);
    CHECK(h1.mean == h3.mean);
    CHECK(h1.kurtosis == h3.kurtosis);
}

TEST_CASE("harmonic autocorrelation decays at kappa")
{
    AcfConfig cfg;
    cfg.dt = 0.005;
    cfg.chains = 16;
    cfg.samples = 20000;
    cfg.sample_stride = 10;
    cfg.max_lag = 60;
    cfg.seed = 3;
    const auto est = estimate_acf_decrement(Potential::quadratic(2.0), 0.01, cfg);
    // Discrete-time decay of the Euler chain.
    const double expected = -std::log(1.0 - 2.0 * cfg.dt) / cfg.dt;
    CHECK(est.decrement == doctest::Approx(expected).epsilon(0.05));
    CHECK(est.normalized.front() == doctest::Approx(1.0));

    AcfConfig narrow = cfg;
    narrow.fit_upper = 0.5;
    narrow.fit_lower = 0.49;
    CHECK_THROWS_AS(estimate_acf_decrement(Potential::quadratic(2.0), 0.01, narrow), FitWindowEmpty);
}

TEST_CASE("critical relaxation scales as D^(2/3)")
{
    const Potential u = Potential::from_control(0.0, 1.0);
    double nu[2];
    const double noise[2] = {1e-2, 1e-3};
    for (int i = 0; i < 2; ++i) {
        const double d = noise[i];
        const double ref = lowest_decrements(build_operator(u, d, 2001), 1, false).nu1();
        AcfConfig cfg;
        cfg.dt = safe_dt(u, d);
        cfg.seed = 11;
        cfg.chains = 16;
        cfg.sample_stride = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(1.0 / (20.0 * ref * cfg.dt)));
        const double tau = cfg.dt * static_cast<double>(cfg.sample_stride);
        cfg.max_lag = static_cast<std::size_t>(std::log(40.0) / ref / tau);
        cfg.samples = static_cast<std::uint64_t>(150.0 / ref / tau);
        nu[i] = estimate_acf_decrement(u, d, cfg).decrement;
    }
    CHECK(nu[0] / nu[1] == doctest::Approx(std::pow(10.0, 2.0 / 3.0)).epsilon(0.10));
}

TEST_CASE("stationary histograms")
{
    SUBCASE("harmonic well")
    {
        SamplingConfig s;
        s.dt = 0.02;
        s.chains = 16;
        s.steps = 400000;
        s.sample_stride = 10;
        s.seed = 9;
        const auto h = stationary_histogram(Potential::quadratic(1.0), 0.01, s);
        CHECK(h.tv_distance < 0.01);
    }
    SUBCASE("critical point is platykurtic")
    {
        const double d = 1e-3;
        auto moment = [d](int k) {
            return oracle::integrate([=](double q) { return std::pow(q, k) * std::exp(-std::pow(q, 6) / (12.0 * d)); },
                                     -2.0, 2.0);
        };
        const double kurt = moment(4) * moment(0) / (moment(2) * moment(2));
        CHECK(kurt == doctest::Approx(2.0).epsilon(1e-8));

        const Potential u = Potential::from_control(0.0, 1.0);
        SamplingConfig s;
        s.dt = safe_dt(u, d);
        s.chains = 16;
        s.steps = 200000;
        s.sample_stride = 20;
        const auto h = stationary_histogram(u, d, s);
        CHECK(h.kurtosis < 3.0);
        CHECK(h.kurtosis == doctest::Approx(kurt).epsilon(0.05));
    }
    SUBCASE("symmetric well has zero mean")
    {
        const ScaledParams sp = reference_point(1.0 / 30.0, 2.0);
        const Potential u = Potential::from_scaled(sp);
        SamplingConfig s;
        s.dt = safe_dt(u, sp.noise);
        s.chains = 16;
        s.steps = 100000;
        const auto h = stationary_histogram(u, sp.noise, s);
        CHECK(std::abs(h.mean) < 3.0 * h.mean_error);
        CHECK(h.max_abs_z < 6.0);
    }
}

TEST_CASE("mean first-passage times")
{
    const ScaledParams sp = reference_point(1.0 / 30.0, 4.0);
    const Potential u = Potential::from_scaled(sp);
    const double w = switching_rate(u, sp, Channel::bistable).rate;

    MfptConfig cfg;
    cfg.dt = safe_dt(u, sp.noise, find_extrema(u).attractors.back().position);
    cfg.seed = 2;
    const auto plus = estimate_mfpt(u, sp, Channel::bistable, cfg);
    CHECK(plus.events >= 500);
    CHECK_FALSE(plus.low_confidence);
    CHECK_FALSE(plus.barrier_out_of_range);
    CHECK(plus.barrier_ratio == doctest::Approx(4.0));
    CHECK(plus.rate == doctest::Approx(w).epsilon(0.25));

    MfptConfig neg = cfg;
    neg.from_negative = true;
    neg.seed = 3;
    const auto minus = estimate_mfpt(u, sp, Channel::bistable, neg);
    const double se = std::hypot(plus.standard_error, minus.standard_error);
    CHECK(std::abs(plus.mean_time - minus.mean_time) < 3.0 * se);

    MfptConfig sad = cfg;
    sad.passage = Passage::saddle_crossing;
    const auto saddle = estimate_mfpt(u, sp, Channel::bistable, sad);
    CHECK(saddle.mean_time / plus.mean_time == doctest::Approx(0.5).epsilon(0.2));

    MfptConfig half = cfg;
    half.dt = 0.5 * cfg.dt;
    half.seed = 4;
    const auto fine = estimate_mfpt(u, sp, Channel::bistable, half);
    CHECK(std::abs(fine.mean_time - plus.mean_time) <
          3.0 * std::hypot(fine.standard_error, plus.standard_error));

    MfptConfig threaded = cfg;
    threaded.threads = 3;
    CHECK(estimate_mfpt(u, sp, Channel::bistable, threaded).mean_time == plus.mean_time);
}

TEST_CASE("basin occupations of a symmetric well")
{
    const ScaledParams sp = reference_point(1.0 / 30.0, 2.0);
    const Potential u = Potential::from_scaled(sp);
    SamplingConfig s;
    s.dt = safe_dt(u, sp.noise);
    s.chains = 16;
    s.steps = 100000;
    const auto occ = basin_occupations(u, sp.noise, s);
    REQUIRE(occ.fractions.size() == 2);
    CHECK(occ.fractions[0] + occ.fractions[1] == doctest::Approx(1.0));
    CHECK(std::abs(occ.fractions[0] - 0.5) < 3.0 * occ.errors[0]);
}
