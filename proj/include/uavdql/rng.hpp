#pragma once

#include <cstdint>
#include <random>

namespace uavdql {

using Rng = std::mt19937_64;

// Independent consumers of one global seed.
enum class Stream : std::uint32_t {
    kScenario = 1,
    kExploration = 2,
};

inline Rng make_rng(std::uint64_t seed, Stream stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return Rng(seq);
}

}  // namespace uavdql
