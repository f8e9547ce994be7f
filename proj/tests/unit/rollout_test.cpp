#include <gtest/gtest.h>

#include "../support/nn_oracles.hpp"
#include "lanecraft/eval/metrics.hpp"
#include "lanecraft/eval/rollout.hpp"
#include "test_support.hpp"

using namespace lanecraft;
using namespace lanecraft::eval;

namespace {
EvalSetup setup(sim::ScenarioCase c, env::AgentKind kind = env::AgentKind::kAgent1) {
  EvalSetup s;
  s.scenario.scenario_case = c;
  s.env.agent_kind = kind;
  return s;
}
}  // namespace

TEST(Rollout, ReferenceOnEmptyRoadKeepsDesiredSpeed) {
  const auto s = setup(sim::ScenarioCase::kHighway);
  auto w = fixtures::empty_world(sim::RoadConfig::highway(3.5, 800), 1, 25);
  fixtures::add_car(w, -60, 1, 20);  // slower traffic behind does not matter
  const auto r = rollout_reference(w, s);
  EXPECT_TRUE(r.completed);
  EXPECT_NEAR(r.mean_speed_mps, 25.0, 1e-9);
  EXPECT_EQ(r.lane_changes, 0);
}

TEST(Rollout, OvertakingReferenceFollowsLeader) {
  const auto s = setup(sim::ScenarioCase::kOvertaking);
  auto w = fixtures::empty_world(sim::RoadConfig::overtaking(3.5, 800), 0, 25);
  fixtures::add_car(w, 50, 0, 17);
  fixtures::add_car(w, 900, 1, 20, -1);
  const auto r = rollout_reference(w, s);
  EXPECT_TRUE(r.completed);
  EXPECT_LT(r.mean_speed_mps, 25.0);
  EXPECT_GT(r.mean_speed_mps, 17.0);
  EXPECT_EQ(r.lane_changes, 0);
}

TEST(Rollout, GeneratedOvertakingReferenceIsSlowerThanFreeRoad) {
  const auto s = setup(sim::ScenarioCase::kOvertaking);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = rollout_reference(s.make_world(seed), s);
    EXPECT_TRUE(r.completed) << seed;
    EXPECT_LT(r.mean_speed_mps, 25.0);
  }
}

TEST(Rollout, ReferenceIsDeterministic) {
  const auto s = setup(sim::ScenarioCase::kHighway);
  const auto w = s.make_world(77);
  std::vector<sim::World> ta, tb;
  const auto a = rollout_reference(w, s, &ta);
  const auto b = rollout_reference(w, s, &tb);
  EXPECT_EQ(a.distance_m, b.distance_m);
  EXPECT_EQ(a.mean_speed_mps, b.mean_speed_mps);
  EXPECT_EQ(a.cause, b.cause);
  ASSERT_EQ(ta.size(), tb.size());
  EXPECT_EQ(ta.size(), static_cast<std::size_t>(a.steps) + 1);
  EXPECT_EQ(ta.back().ego().x, tb.back().ego().x);
}

TEST(Rollout, ComparisonUsesMatchedScenariosAndIsThreadIndependent) {
  const auto s = setup(sim::ScenarioCase::kHighway);
  Rng rng(1);
  nn::NetworkShape shape;
  shape.outputs = 3;
  const auto net = oracle::random_network(shape, rng);
  const auto seeds = episode_seeds(5, Stream::kEvalEpisodes, 0, 12);
  const auto one = compare_episodes(net, s, seeds, 1);
  const auto many = compare_episodes(net, s, seeds, 3);
  ASSERT_EQ(one.size(), 12u);
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].seed, seeds[i]);
    EXPECT_EQ(one[i].agent.distance_m, many[i].agent.distance_m);
    EXPECT_EQ(one[i].reference.mean_speed_mps, many[i].reference.mean_speed_mps);
    EXPECT_EQ(one[i].agent.mean_speed_mps, rollout_agent(net, s.make_world(seeds[i]), s).mean_speed_mps);
    EXPECT_EQ(one[i].reference.mean_speed_mps, rollout_reference(s.make_world(seeds[i]), s).mean_speed_mps);
    if (one[i].reference.completed && one[i].agent.completed) {
      EXPECT_NEAR(one[i].perf_index, one[i].agent.mean_speed_mps / one[i].reference.mean_speed_mps, 1e-12);
    }
    if (!one[i].agent.completed && one[i].reference.completed) {
      EXPECT_LE(one[i].perf_index, one[i].agent.distance_m / 800 * (25.0 / one[i].reference.mean_speed_mps));
    }
  }
}

TEST(Rollout, AgentHeadMustMatchActionSpace) {
  const auto s = setup(sim::ScenarioCase::kHighway, env::AgentKind::kAgent2);
  nn::NetworkShape shape;
  shape.outputs = 3;
  EXPECT_THROW(rollout_agent(nn::QNetwork(shape), s.make_world(1), s), std::invalid_argument);
}

TEST(Rollout, BaselineRecordsPerSeed) {
  const auto s = setup(sim::ScenarioCase::kHighway);
  const auto seeds = episode_seeds(1, Stream::kBaselineEpisodes, 0, 5);
  const auto records = baseline_episodes(s, seeds, 2);
  ASSERT_EQ(records.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(records[i].seed, seeds[i]);
  const auto summary = summarize_baseline(records);
  EXPECT_EQ(summary.episodes, 5u);
}
