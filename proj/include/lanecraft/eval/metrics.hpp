#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lanecraft/eval/rollout.hpp"

namespace lanecraft::eval {

/// (d / d_max) * (v_agent / v_reference). Requires a completed reference run.
double performance_index(const EpisodeResult& agent, const EpisodeResult& reference, double d_max);

/// Fixed-width bins over [lo, hi); values outside land in the edge bins.
struct HistogramConfig {
  double lo = 0.5;
  double hi = 1.5;
  double bin_width = 0.01;

  std::size_t bin_count() const;
  void validate() const;
};

struct Histogram {
  HistogramConfig config;
  std::vector<long> counts;

  double bin_low(std::size_t bin) const { return config.lo + static_cast<double>(bin) * config.bin_width; }
  std::size_t bin_of(double value) const;
  void add(double value);
};

struct EvalSummary {
  std::size_t episodes = 0;
  double collision_free_fraction = 0;  ///< share of episodes the agent completed
  double perf_index_mean = 0;          ///< over records whose reference completed
  double perf_index_std = 0;           ///< population standard deviation
  std::size_t indexed_episodes = 0;
  std::size_t reference_failures = 0;
  Histogram histogram;
  std::vector<double> action_frequencies;
  std::vector<std::uint64_t> failed_seeds;  ///< agent did not complete
};

/// Order-independent aggregation of comparison records (non-empty).
EvalSummary summarize(std::span<const ComparisonRecord> records, int action_count,
                      HistogramConfig histogram = {});

struct BaselineSummary {
  std::size_t episodes = 0;
  double completed_fraction = 0;
  double mean_speed_mps = 0;  ///< over completed episodes
  std::vector<std::uint64_t> failed_seeds;
};

BaselineSummary summarize_baseline(std::span<const BaselineRecord> records);

}  // namespace lanecraft::eval
