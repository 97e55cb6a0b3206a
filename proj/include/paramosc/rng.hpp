#pragma once

#include <boost/random/normal_distribution.hpp>

#include <cstdint>
#include <random>
#include <span>

namespace paramosc {

/// Independent random stream keyed by (seed, index). Trajectory i of an
/// ensemble always draws from Stream(seed, i), so results do not depend on
/// how trajectories are scheduled across threads.
class Stream {
public:
    Stream(std::uint64_t seed, std::uint64_t index);

    double normal() { return normal_(engine_); }
    /// Uniform on [0, 1).
    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    void fill_normal(std::span<double> out);

private:
    std::mt19937_64 engine_;
    boost::random::normal_distribution<double> normal_; // ziggurat
};

} // namespace paramosc
