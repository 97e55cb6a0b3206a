#include "oracles.hpp"

#include "paramosc/error.hpp"
#include "paramosc/grid.hpp"
#include "paramosc/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace paramosc;

TEST_CASE("symmetric grid")
{
    const GridSpec g = GridSpec::symmetric(2.0, 401);
    CHECK(g.node(g.centre()) == 0.0);
    CHECK(g.node(0) == -2.0);
    CHECK(g.node(400) == 2.0);
    for (std::size_t i = 0; i < g.points; ++i) {
        CHECK(g.node(i) == -g.node(g.points - 1 - i));
    }
    CHECK_THROWS_AS(GridSpec::symmetric(1.0, 400), InputError);
    CHECK_THROWS_AS(GridSpec::symmetric(1.0, 101), InputError);
    CHECK_THROWS_AS(GridSpec::symmetric(-1.0, 401), InputError);
}

TEST_CASE("Simpson is exact for cubics and fourth order otherwise")
{
    auto run = [](std::size_t n, auto fn) {
        const GridSpec g = GridSpec::symmetric(1.0, n);
        std::vector<double> f;
        for (double q : g.nodes()) {
            f.push_back(fn(q));
        }
        return simpson(f, g.step());
    };
    CHECK(run(201, [](double q) { return 1.0 + q + q * q + q * q * q; }) == doctest::Approx(2.0 + 2.0 / 3.0).epsilon(1e-14));

    auto g = [](double q) { return std::exp(-3.0 * q * q) * std::cos(q); };
    const double exact = oracle::integrate(g, -1.0, 1.0);
    const double e1 = std::abs(run(201, g) - exact);
    const double e2 = std::abs(run(401, g) - exact);
    CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
    CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0}, 0.1), InputError);
}

TEST_CASE("cumulative trapezoid")
{
    const std::vector<double> f{1.0, 1.0, 1.0, 1.0};
    const auto c = cumulative_trapezoid(f, 0.5);
    CHECK(c.front() == 0.0);
    CHECK(c.back() == doctest::Approx(1.5));
}
