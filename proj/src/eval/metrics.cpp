#include "lanecraft/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lanecraft::eval {

namespace {

// Summing in sorted order makes the result independent of record order.
double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double total = 0;
  for (double v : values) total += v;
  return total;
}

}  // namespace

double performance_index(const EpisodeResult& agent, const EpisodeResult& reference, double d_max) {
  if (!(d_max > 0)) throw std::invalid_argument("d_max must be positive");
  if (!reference.completed || !(reference.mean_speed_mps > 0)) {
    throw std::invalid_argument("performance index needs a completed reference episode");
  }
  return (agent.distance_m / d_max) * (agent.mean_speed_mps / reference.mean_speed_mps);
}

std::size_t HistogramConfig::bin_count() const {
  return static_cast<std::size_t>(std::llround((hi - lo) / bin_width));
}

void HistogramConfig::validate() const {
  if (!(bin_width > 0) || !(hi > lo)) throw std::invalid_argument("invalid histogram range");
  if (bin_count() == 0) throw std::invalid_argument("histogram has no bins");
}

std::size_t Histogram::bin_of(double value) const {
  const double position = (value - config.lo) / config.bin_width;
  // Tolerance keeps values sitting exactly on a bin edge in the upper bin.
  const double bin = std::floor(position + 1e-9);
  if (!(bin > 0)) return 0;
  return std::min(static_cast<std::size_t>(bin), counts.size() - 1);
}

void Histogram::add(double value) { ++counts[bin_of(value)]; }

EvalSummary summarize(std::span<const ComparisonRecord> records, int action_count,
                      HistogramConfig histogram) {
  if (records.empty()) throw std::invalid_argument("cannot summarize an empty record list");
  histogram.validate();
  EvalSummary s;
  s.episodes = records.size();
  s.histogram.config = histogram;
  s.histogram.counts.assign(histogram.bin_count(), 0);

  std::vector<double> indices;
  std::vector<long> action_totals(std::max(action_count, 0), 0);
  std::size_t completed = 0;
  for (const auto& rec : records) {
    if (rec.agent.completed) {
      ++completed;
    } else {
      s.failed_seeds.push_back(rec.seed);
    }
    if (rec.reference_failed()) {
      ++s.reference_failures;
    } else {
      indices.push_back(rec.perf_index);
      s.histogram.add(rec.perf_index);
    }
    for (std::size_t a = 0; a < rec.agent.action_counts.size() && a < action_totals.size(); ++a) {
      action_totals[a] += rec.agent.action_counts[a];
    }
  }
  std::sort(s.failed_seeds.begin(), s.failed_seeds.end());
  s.collision_free_fraction = static_cast<double>(completed) / static_cast<double>(records.size());
  s.indexed_episodes = indices.size();
  if (!indices.empty()) {
    const double n = static_cast<double>(indices.size());
    s.perf_index_mean = sorted_sum(indices) / n;
    std::vector<double> sq;
    sq.reserve(indices.size());
    for (double v : indices) sq.push_back((v - s.perf_index_mean) * (v - s.perf_index_mean));
    s.perf_index_std = std::sqrt(sorted_sum(std::move(sq)) / n);
  } else {
    s.perf_index_mean = s.perf_index_std = std::numeric_limits<double>::quiet_NaN();
  }
  long total_actions = 0;
  for (long c : action_totals) total_actions += c;
  for (long c : action_totals) {
    s.action_frequencies.push_back(total_actions > 0 ? static_cast<double>(c) / total_actions : 0.0);
  }
  return s;
}

BaselineSummary summarize_baseline(std::span<const BaselineRecord> records) {
  if (records.empty()) throw std::invalid_argument("cannot summarize an empty record list");
  BaselineSummary s;
  s.episodes = records.size();
  std::vector<double> speeds;
  for (const auto& rec : records) {
    if (rec.result.completed) {
      speeds.push_back(rec.result.mean_speed_mps);
    } else {
      s.failed_seeds.push_back(rec.seed);
    }
  }
  std::sort(s.failed_seeds.begin(), s.failed_seeds.end());
  s.completed_fraction = static_cast<double>(speeds.size()) / static_cast<double>(records.size());
  s.mean_speed_mps = speeds.empty() ? std::numeric_limits<double>::quiet_NaN()
                                    : sorted_sum(speeds) / static_cast<double>(speeds.size());
  return s;
}

}  // namespace lanecraft::eval
