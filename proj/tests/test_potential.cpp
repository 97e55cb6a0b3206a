#include "oracles.hpp"

#include "paramosc/error.hpp"
#include "paramosc/potential.hpp"
#include "paramosc/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace paramosc;

TEST_CASE("coefficients from control parameters")
{
    Potential u = Potential::from_control(0.0, 1.0);
    CHECK(u.c2() == 0.0);
    CHECK(u.c4() == 0.0);
    CHECK(u.c6() == doctest::Approx(1.0 / 12.0));

    u = Potential::from_control(0.0, std::sqrt(2.0));
    CHECK(u.c2() == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(u.value(1.0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-15));

    u = Potential::from_control(1.0, 1.0);
    CHECK(u.c2() == doctest::Approx(0.25));
    CHECK(u.c4() == doctest::Approx(-0.25));
}

TEST_CASE("evaluation at the origin and parity")
{
    const Potential u = Potential::from_control(0.7, 1.3);
    const PotentialEval e = u.evaluate(0.0);
    CHECK(e.value == 0.0);
    CHECK(e.slope == 0.0);
    CHECK(e.curvature == 2.0 * u.c2());
    for (double q : {0.1, 0.5, 1.3, 2.7}) {
        CHECK(u.value(q) == u.value(-q));
        CHECK(u.slope(q) == -u.slope(-q));
        CHECK(u.slope(q) == doctest::Approx(oracle::sextic_slope(u.c2(), u.c4(), u.c6(), q)).epsilon(1e-13));
        CHECK(u.value(q) == doctest::Approx(oracle::sextic(u.c2(), u.c4(), u.c6(), q)).epsilon(1e-13));
    }
}

TEST_CASE("extrema in the three regimes")
{
    const double f = std::sqrt(2.0);

    ExtremumSet ex = find_extrema(Potential::from_control(0.5, f));
    CHECK(ex.regime == Regime::bistable);
    REQUIRE(ex.attractors.size() == 2);
    REQUIRE(ex.saddles.size() == 1);
    CHECK(ex.attractors[1].position_sq() == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(ex.saddles[0].position == 0.0);

    ex = find_extrema(Potential::from_control(1.5, f));
    CHECK(ex.regime == Regime::tristable);
    REQUIRE(ex.attractors.size() == 3);
    REQUIRE(ex.saddles.size() == 2);
    CHECK(ex.attractors[2].position_sq() == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(ex.attractors[1].position == 0.0);
    CHECK(ex.saddles[1].position_sq() == doctest::Approx(0.5).epsilon(1e-14));

    ex = find_extrema(Potential::from_control(-2.0, f));
    CHECK(ex.regime == Regime::monostable);
    REQUIRE(ex.attractors.size() == 1);
    CHECK(ex.saddles.empty());
}

TEST_CASE("nonzero extrema pair up with equal value and curvature")
{
    const ExtremumSet ex = find_extrema(Potential::from_control(1.2, 1.3));
    const auto all = ex.all();
    for (const auto& a : all) {
        if (a.position == 0.0) {
            continue;
        }
        bool mirrored = false;
        for (const auto& b : all) {
            if (b.position == -a.position) {
                mirrored = b.value == a.value && b.curvature == a.curvature;
            }
        }
        CHECK(mirrored);
    }
}

TEST_CASE("closed-form extrema agree with a bisection root finder")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mu_d(-3.0, 3.0);
    std::uniform_real_distribution<double> f_d(0.5, 2.5);
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double mu = mu_d(rng);
        const double f = f_d(rng);
        const Potential u = Potential::from_control(mu, f);
        const auto c = oracle::control_coeffs(mu, f);
        const ExtremumSet ex = find_extrema(u);
        if (ex.degeneracy) {
            continue;
        }
        for (const auto& e : ex.all()) {
            CHECK(std::abs(u.slope(e.position)) < 1e-10);
            if (e.position <= 0.0) {
                continue;
            }
            // Bracket the root of U'(Q)/Q from the quadratic's neighbours.
            auto g = [&](double q) { return oracle::sextic_slope(c.c2, c.c4, c.c6, q) / q; };
            const double lo = e.position * 0.9;
            const double hi = e.position * 1.1;
            if (g(lo) * g(hi) < 0.0) {
                CHECK(std::abs(oracle::bisect(g, lo, hi) - e.position) < 1e-9);
                ++checked;
            }
        }
    }
    CHECK(checked > 300);
}

TEST_CASE("degenerate roots are merged and flagged on the upper line")
{
    const double f = 1.25;
    const ExtremumSet ex = find_extrema(Potential::from_control(bifurcation_detuning(f), f));
    CHECK(ex.degeneracy);
    CHECK_FALSE(ex.degenerate.empty());
}

TEST_CASE("bifurcation boundaries")
{
    CHECK(bifurcation_detuning(1.0) == 0.0);
    CHECK(bifurcation_detuning(std::sqrt(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bifurcation_detuning(1.25) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK_THROWS_AS(bifurcation_detuning(0.9), InputError);

    const std::vector<double> drives{1.0, 1.1, 1.5};
    const BifurcationDiagram d = bifurcation_boundaries(drives);
    for (const auto& row : d.rows) {
        CHECK(row.upper == -row.lower);
    }
    CHECK(d.rows[0].upper == 0.0);
    CHECK(d.critical_drive == 1.0);
    CHECK(d.critical_detuning == 0.0);
}

TEST_CASE("support rule covers every feature")
{
    for (auto [mu, f, D] : {std::tuple{0.0, 1.0, 1e-3}, {1.5, 1.414, 0.05}, {-1.0, 1.2, 1e-2}}) {
        const Potential u = Potential::from_control(mu, f);
        const double qm = support_half_width(u, D);
        double level = 0.0;
        for (const auto& e : find_extrema(u).all()) {
            CHECK(std::abs(e.position) < qm);
            level = std::min(level, e.value);
        }
        CHECK(u.value(qm) >= level + 30.0 * D - 1e-9);
    }
}

TEST_CASE("stationary density: normalization, parity, modes")
{
    const double D = 1e-2;
    const Potential u = Potential::from_control(0.0, 1.0);
    const StationaryDensity s = stationary_distribution(u, D, 4001);
    const double h = s.q[1] - s.q[0];
    CHECK(simpson(s.density, h) == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < s.q.size(); ++i) {
        CHECK(s.density[i] == s.density[s.q.size() - 1 - i]);
    }
    // Single flat-topped maximum at 0.
    const std::size_t mid = (s.q.size() - 1) / 2;
    CHECK(s.q[mid] == 0.0);
    CHECK(s.density[mid] == *std::max_element(s.density.begin(), s.density.end()));

    // ln Z against an independent quadrature.
    const double z = 2.0 * oracle::integrate([&](double q) { return std::exp(-std::pow(q, 6) / (12.0 * D)); }, 0.0, 5.0);
    CHECK(s.log_partition == doctest::Approx(std::log(z)).epsilon(1e-10));

    // Bimodal far above threshold, peaks at +-(f^2 - 1)^(1/4).
    const double f = std::sqrt(1.5);
    const StationaryDensity b = stationary_distribution(Potential::from_control(0.0, f), 1e-3, 4001);
    const auto pk = std::max_element(b.density.begin(), b.density.end()) - b.density.begin();
    CHECK(std::abs(b.q[static_cast<std::size_t>(pk)]) == doctest::Approx(std::pow(0.5, 0.25)).epsilon(2e-3));
}

TEST_CASE("critical-point moments")
{
    const Potential u = Potential::from_control(0.0, 1.0);
    auto moment = [&](double D, int k) {
        const StationaryDensity s = stationary_distribution(u, D, 4001);
        std::vector<double> w(s.q.size());
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i] = std::pow(s.q[i], k) * s.density[i];
        }
        return simpson(w, s.q[1] - s.q[0]);
    };
    // <Q^2> ~ D^(1/3).
    CHECK(moment(8e-3, 2) / moment(1e-3, 2) == doctest::Approx(2.0).epsilon(1e-2));
    // Kurtosis of exp(-Q^6 / 12D): Gamma(5/6) Gamma(1/6) / Gamma(1/2)^2 = 2.
    const double kurt = moment(1e-3, 4) / std::pow(moment(1e-3, 2), 2);
    const double exact = std::tgamma(5.0 / 6.0) * std::tgamma(1.0 / 6.0) / std::pow(std::tgamma(0.5), 2);
    CHECK(exact == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(kurt == doctest::Approx(exact).epsilon(1e-8));
}

TEST_CASE("difference of levels in factored form")
{
    const Potential u = Potential::from_control(1.7, 1.3);
    for (auto [a, b] : {std::pair{0.2, 2.9}, {1.0, 1.0 + 1e-6}, {0.0, 0.5}}) {
        const double direct = u.value_sq(b) - u.value_sq(a);
        CHECK(u.difference_sq(a, b) == doctest::Approx(direct).epsilon(1e-9));
    }
}
