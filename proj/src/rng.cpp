#include "paramosc/rng.hpp"

namespace paramosc {

Stream::Stream(std::uint64_t seed, std::uint64_t index)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x70617261u};
    engine_.seed(seq);
}

void Stream::fill_normal(std::span<double> out)
{
    for (double& x : out) {
        x = normal_(engine_);
    }
}

} // namespace paramosc
