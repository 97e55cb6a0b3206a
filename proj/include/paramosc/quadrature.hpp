#pragma once

#include <span>
#include <vector>

namespace paramosc {

/// Composite Simpson rule on a uniform grid; f.size() must be odd and >= 3.
double simpson(std::span<const double> f, double h);

/// Running trapezoid integral, out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> f, double h);

} // namespace paramosc
