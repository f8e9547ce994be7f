#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lanecraft/driver/mobil.hpp"
#include "lanecraft/env/traffic_env.hpp"
#include "lanecraft/nn/qnetwork.hpp"
#include "lanecraft/sim/scenario.hpp"
#include "lanecraft/sim/world.hpp"

namespace lanecraft::eval {

/// Everything needed to build and run an episode from a seed.
struct EvalSetup {
  sim::ScenarioConfig scenario;
  sim::ScenarioOptions options;
  sim::WorldParams world;
  env::EnvConfig env;
  driver::MobilParams mobil;

  double d_max() const { return options.d_max; }
  sim::World make_world(std::uint64_t seed) const;
};

struct EpisodeResult {
  double distance_m = 0;
  double mean_speed_mps = 0;
  double elapsed_s = 0;
  bool completed = false;
  env::TerminalCause cause = env::TerminalCause::kNone;
  std::vector<long> action_counts;
  int lane_changes = 0;
  int steps = 0;
};

EpisodeResult to_result(const env::EpisodeStats& stats);

using Policy = std::function<int(const env::TrafficEnv&)>;

/// Runs one episode to its end. When `trace` is given, the world is appended
/// after the reset and after every decision step.
EpisodeResult run_episode(const sim::World& initial, const env::EnvConfig& env_config,
                          const sim::WorldParams& params, const Policy& policy,
                          std::vector<sim::World>* trace = nullptr);

/// Greedy (epsilon = 0) rollout of a Q-network.
EpisodeResult rollout_agent(const nn::QNetwork& net, const sim::World& initial,
                            const EvalSetup& setup, std::vector<sim::World>* trace = nullptr);

/// Reference driver on the same scenario. Highway: IDM speed control with MOBIL
/// lane decisions each step. Overtaking: IDM only, the ego never leaves its lane.
EpisodeResult rollout_reference(const sim::World& initial, const EvalSetup& setup,
                                std::vector<sim::World>* trace = nullptr);

struct ComparisonRecord {
  std::uint64_t seed = 0;
  EpisodeResult agent;
  EpisodeResult reference;
  /// NaN when the reference did not complete the episode.
  double perf_index = 0;

  bool reference_failed() const { return !reference.completed; }
};

/// Seeds for `count` episodes starting at `first_index` of `stream`.
std::vector<std::uint64_t> episode_seeds(std::uint64_t base, Stream stream, std::uint64_t first_index,
                                         std::size_t count);

/// Agent and reference on identical scenarios, one record per seed in seed
/// order. Episodes are spread over `workers` threads.
std::vector<ComparisonRecord> compare_episodes(const nn::QNetwork& net, const EvalSetup& setup,
                                               std::span<const std::uint64_t> seeds, int workers = 1);

struct BaselineRecord {
  std::uint64_t seed = 0;
  EpisodeResult result;
};

std::vector<BaselineRecord> baseline_episodes(const EvalSetup& setup,
                                              std::span<const std::uint64_t> seeds, int workers = 1);

/// Calls fn(i) for i in [0, count) on up to `workers` threads.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace lanecraft::eval
