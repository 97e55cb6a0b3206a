#pragma once

#include <cstddef>
#include <vector>

namespace paramosc {

/// Uniform grid on [-q_max, q_max] with an odd number of points, so that
/// Q = 0 is a node and node i mirrors node N-1-i exactly.
struct GridSpec {
    double q_max = 1.0;
    std::size_t points = 2001;

    static constexpr std::size_t min_points = 201;

    static GridSpec symmetric(double q_max, std::size_t points);

    void validate() const;
    std::size_t centre() const { return (points - 1) / 2; }
    double step() const { return q_max / static_cast<double>(centre()); }
    double node(std::size_t i) const;
    std::vector<double> nodes() const;
};

} // namespace paramosc
