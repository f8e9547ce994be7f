#pragma once

#include <cstdint>
#include <random>

namespace lanecraft {

using Rng = std::mt19937_64;

/// Independent random streams derived from one run seed.
enum class Stream : std::uint64_t {
  kTrainEpisodes = 1,
  kEvalEpisodes = 2,
  kNetworkInit = 3,
  kAgent = 4,
  kBaselineEpisodes = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for element `index` of `stream` under `base`. Distinct (stream, index)
/// pairs give statistically unrelated seeds.
std::uint64_t derive_seed(std::uint64_t base, Stream stream, std::uint64_t index);

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_index(Rng& rng, int count) {
  return std::uniform_int_distribution<int>(0, count - 1)(rng);
}

}  // namespace lanecraft
