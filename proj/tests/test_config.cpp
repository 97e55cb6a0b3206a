#include "paramosc/config.hpp"
#include "paramosc/error.hpp"

#include <doctest.h>

using namespace paramosc;

TEST_CASE("grid syntax")
{
    const auto r = parse_grid("1:2:5");
    REQUIRE(r.size() == 5);
    CHECK(r.front() == 1.0);
    CHECK(r[2] == 1.5);
    CHECK(r.back() == 2.0);
    CHECK(parse_grid("3:4:1") == std::vector<double>{3.0});
    CHECK(parse_grid(" 0.5, 1,2 ") == std::vector<double>{0.5, 1.0, 2.0});
    CHECK_THROWS_AS(parse_grid(""), ConfigError);
    CHECK_THROWS_AS(parse_grid("  "), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1:2:0"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_grid("1,x"), ConfigError);
}

TEST_CASE("typed getters record resolved values")
{
    Config cfg = Config::from_string("[sweep]\ndrives = 1:2:3\n[run]\nflag = yes\nn = 7\n");
    CHECK(cfg.get_grid("sweep.drives", "0").size() == 3);
    CHECK(cfg.get_bool("run.flag", false));
    CHECK(cfg.get_int("run.n", 0) == 7);
    CHECK(cfg.get_double("run.x", 0.25) == 0.25);
    CHECK(cfg.resolved().at("run.x") == "0.25");
    CHECK_NOTHROW(cfg.reject_unused());

    Config bad = Config::from_string("[run]\nn = seven\n");
    CHECK_THROWS_AS(bad.get_int("run.n", 0), ConfigError);
}

TEST_CASE("unknown keys are rejected")
{
    Config cfg = Config::from_string("[scaled]\ndetuning = 0.1\ntypo = 3\n");
    resolve_params(cfg, ScaledParams{});
    CHECK_THROWS_WITH_AS(cfg.reject_unused(), doctest::Contains("scaled.typo"), ConfigError);
}

TEST_CASE("parameter blocks")
{
    Config both = Config::from_string("[lab]\nomega0 = 1\n[scaled]\ndrive = 1.1\n");
    CHECK_THROWS_AS(resolve_params(both, ScaledParams{}), ConfigError);

    Config scaled = Config::from_string("[scaled]\ndrive = 1.1\nnoise = 0.01\nplanck = 0.02\n");
    const auto rp = resolve_params(scaled, ScaledParams{});
    CHECK(rp.scaled.drive == 1.1);
    CHECK_FALSE(rp.lab.has_value());

    Config lab = Config::from_string(
        "[lab]\nomega0 = 1\ngamma = 0.1\nomega_F = 2.001\ndecay_rate = 0.001\ndrive_amplitude = 0.005\n");
    const auto rl = resolve_params(lab, ScaledParams{});
    REQUIRE(rl.lab.has_value());
    CHECK(rl.scaled.drive == doctest::Approx(0.005 / (2.0 * 0.001 * 2.001)));
    CHECK(lab.resolved().count("scaled.detuning") == 1);

    Config neg = Config::from_string("[scaled]\nnoise = -1\n");
    CHECK_THROWS_AS(resolve_params(neg, ScaledParams{}), InputError);
}
