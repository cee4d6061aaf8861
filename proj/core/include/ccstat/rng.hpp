#pragma once

#include <cstdint>
#include <random>

namespace ccstat {

using Rng = std::mt19937_64;

// A reproducible generator for (seed, stream).  Monte Carlo drivers give
// each replication its own stream index, so results do not depend on how
// work is scheduled across threads.
inline Rng seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return Rng(seq);
}

}  // namespace ccstat
