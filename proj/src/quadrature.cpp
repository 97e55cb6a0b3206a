#include "paramosc/quadrature.hpp"

#include "paramosc/error.hpp"
#include "paramosc/grid.hpp"

#include <cmath>

namespace paramosc {

double simpson(std::span<const double> f, double h)
{
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) {
        throw InputError("simpson: need an odd number of samples >= 3");
    }
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i + 1 < n; i += 2) {
        odd += f[i];
    }
    for (std::size_t i = 2; i + 1 < n; i += 2) {
        even += f[i];
    }
    return h / 3.0 * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

std::vector<double> cumulative_trapezoid(std::span<const double> f, double h)
{
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    }
    return out;
}

GridSpec GridSpec::symmetric(double q_max, std::size_t points)
{
    GridSpec g{q_max, points};
    g.validate();
    return g;
}

void GridSpec::validate() const
{
    if (!(q_max > 0.0) || !std::isfinite(q_max)) {
        throw InputError("grid: q_max must be positive and finite");
    }
    if (points < min_points || points % 2 == 0) {
        throw InputError("grid: point count must be odd and at least 201");
    }
}

double GridSpec::node(std::size_t i) const
{
    const auto offset = static_cast<double>(static_cast<long long>(i) -
                                            static_cast<long long>(centre()));
    return offset * step();
}

std::vector<double> GridSpec::nodes() const
{
    std::vector<double> q(points);
    for (std::size_t i = 0; i < points; ++i) {
        q[i] = node(i);
    }
    return q;
}

} // namespace paramosc
