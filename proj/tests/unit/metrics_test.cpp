#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "lanecraft/eval/export.hpp"
#include "lanecraft/eval/metrics.hpp"

using namespace lanecraft;
using namespace lanecraft::eval;

namespace {
EpisodeResult result(double d, double v, bool completed) {
  EpisodeResult r;
  r.distance_m = d;
  r.mean_speed_mps = v;
  r.completed = completed;
  r.cause = completed ? env::TerminalCause::kEpisodeComplete : env::TerminalCause::kCollision;
  r.action_counts = {3, 1, 0};
  return r;
}

ComparisonRecord record(std::uint64_t seed, double d, double v, bool completed, double v_ref = 20,
                        bool ref_completed = true) {
  ComparisonRecord r;
  r.seed = seed;
  r.agent = result(d, v, completed);
  r.reference = result(800, v_ref, ref_completed);
  r.perf_index = ref_completed ? performance_index(r.agent, r.reference, 800) : NAN;
  return r;
}
}  // namespace

TEST(PerformanceIndex, Examples) {
  EXPECT_DOUBLE_EQ(performance_index(result(800, 20, true), result(800, 20, true), 800), 1.0);
  EXPECT_DOUBLE_EQ(performance_index(result(400, 20, false), result(800, 20, true), 800), 0.5);
  EXPECT_NEAR(performance_index(result(800, 22, true), result(800, 20, true), 800), 1.1, 1e-15);
  EXPECT_THROW(performance_index(result(800, 20, true), result(300, 20, false), 800), std::invalid_argument);
}

TEST(Summary, CompletedFraction) {
  std::vector<ComparisonRecord> all;
  for (int i = 0; i < 100; ++i) all.push_back(record(i, 800, 20, true));
  EXPECT_DOUBLE_EQ(summarize(all, 3).collision_free_fraction, 1.0);
  for (int i = 0; i < 14; ++i) all[i * 7] = record(i * 7, 300, 20, false);
  const auto s = summarize(all, 3);
  EXPECT_DOUBLE_EQ(s.collision_free_fraction, 0.86);
  EXPECT_EQ(s.failed_seeds.size(), 14u);
}

TEST(Summary, UnitIndexFillsOneBin) {
  std::vector<ComparisonRecord> all;
  for (int i = 0; i < 50; ++i) all.push_back(record(i, 800, 20, true));
  const auto s = summarize(all, 3);
  EXPECT_DOUBLE_EQ(s.perf_index_mean, 1.0);
  EXPECT_DOUBLE_EQ(s.perf_index_std, 0.0);
  ASSERT_EQ(s.histogram.counts.size(), 100u);
  int nonzero = 0;
  for (std::size_t b = 0; b < s.histogram.counts.size(); ++b) {
    if (s.histogram.counts[b] == 0) continue;
    ++nonzero;
    EXPECT_EQ(s.histogram.counts[b], 50);
    EXPECT_NEAR(s.histogram.bin_low(b), 1.0, 1e-12);
  }
  EXPECT_EQ(nonzero, 1);
}

TEST(Summary, HistogramEdgesClamp) {
  Histogram h{HistogramConfig{}, std::vector<long>(100, 0)};
  EXPECT_EQ(h.bin_of(0.1), 0u);
  EXPECT_EQ(h.bin_of(0.5), 0u);
  EXPECT_EQ(h.bin_of(0.515), 1u);
  EXPECT_EQ(h.bin_of(1.1), 60u);
  EXPECT_EQ(h.bin_of(1.5), 99u);
  EXPECT_EQ(h.bin_of(7.0), 99u);
}

TEST(Summary, PopulationStdAndReferenceFailures) {
  std::vector<ComparisonRecord> all{record(1, 800, 20, true), record(2, 800, 24, true),
                                    record(3, 800, 30, true, 20, false)};
  const auto s = summarize(all, 3);
  EXPECT_EQ(s.indexed_episodes, 2u);
  EXPECT_EQ(s.reference_failures, 1u);
  EXPECT_NEAR(s.perf_index_mean, 1.1, 1e-15);
  EXPECT_NEAR(s.perf_index_std, 0.1, 1e-15);
  EXPECT_DOUBLE_EQ(s.collision_free_fraction, 1.0);
  EXPECT_EQ(s.action_frequencies, (std::vector<double>{0.75, 0.25, 0.0}));
}

TEST(SummaryProperty, OrderIndependent) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(100, 800), v(15, 25);
  std::vector<ComparisonRecord> all;
  for (int i = 0; i < 300; ++i) all.push_back(record(i, d(rng), v(rng), i % 5 != 0, v(rng), i % 17 != 0));
  const auto base = summarize(all, 3);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(all.begin(), all.end(), rng);
    const auto s = summarize(all, 3);
    EXPECT_EQ(s.perf_index_mean, base.perf_index_mean);
    EXPECT_EQ(s.perf_index_std, base.perf_index_std);
    EXPECT_EQ(s.histogram.counts, base.histogram.counts);
    EXPECT_EQ(s.failed_seeds, base.failed_seeds);
    EXPECT_EQ(s.collision_free_fraction, base.collision_free_fraction);
  }
}

TEST(Summary, EmptyRejected) {
  EXPECT_THROW(summarize(std::vector<ComparisonRecord>{}, 3), std::invalid_argument);
}

TEST(Export, ComparisonCsv) {
  std::vector<ComparisonRecord> all{record(7, 800, 22, true), record(8, 250, 10, false)};
  std::ostringstream out;
  write_comparison_csv(out, all);
  EXPECT_EQ(out.str(),
            "seed,agent_d,agent_v,ref_v,perf_index,terminal_cause\n"
            "7,800,22,20,1.1,episode_complete\n"
            "8,250,10,20,0.15625,collision\n");
}

TEST(Export, HistogramAndActions) {
  Histogram h{HistogramConfig{0.5, 0.52, 0.01}, {2, 5}};
  std::ostringstream out;
  write_histogram_csv(out, h);
  EXPECT_EQ(out.str(), "bin_low,count\n0.5,2\n0.51,5\n");
  std::ostringstream actions;
  const std::vector<ActionFrequencyRow> rows{{"50000", {0.5, 0.25, 0.25}}};
  write_actions_csv(actions, rows);
  EXPECT_EQ(actions.str(), "run,action_freq_0,action_freq_1,action_freq_2\n50000,0.5,0.25,0.25\n");
}
