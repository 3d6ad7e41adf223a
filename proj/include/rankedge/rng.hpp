#pragma once

#include <cstdint>
#include <random>

namespace rankedge {

// Independent generator for stream (seed, stream). Monte Carlo work is split
// into fixed-size chunks and chunk c always draws from stream (seed, c).
inline std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x72616e6bu};
  return std::mt19937_64(seq);
}

inline std::size_t uniform_index(std::mt19937_64& eng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng);
}

}  // namespace rankedge
