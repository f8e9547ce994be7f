#include "lanecraft/eval/rollout.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lanecraft/driver/reference_driver.hpp"
#include "lanecraft/dqn/policy.hpp"
#include "lanecraft/eval/metrics.hpp"

namespace lanecraft::eval {

sim::World EvalSetup::make_world(std::uint64_t seed) const {
  return sim::generate_scenario(scenario, options, seed);
}

EpisodeResult to_result(const env::EpisodeStats& stats) {
  EpisodeResult r;
  r.distance_m = stats.distance_m;
  r.elapsed_s = stats.elapsed_s;
  r.mean_speed_mps = stats.mean_speed();
  r.cause = stats.cause;
  r.completed = stats.cause == env::TerminalCause::kEpisodeComplete;
  r.action_counts = stats.action_counts;
  r.lane_changes = stats.lane_changes;
  r.steps = stats.steps;
  return r;
}

EpisodeResult run_episode(const sim::World& initial, const env::EnvConfig& env_config,
                          const sim::WorldParams& params, const Policy& policy,
                          std::vector<sim::World>* trace) {
  env::TrafficEnv env(env_config, params);
  env.reset(initial);
  if (trace) trace->push_back(env.world());
  while (!env.done()) {
    env.step(policy(env));
    if (trace) trace->push_back(env.world());
  }
  return to_result(env.stats());
}

EpisodeResult rollout_agent(const nn::QNetwork& net, const sim::World& initial,
                            const EvalSetup& setup, std::vector<sim::World>* trace) {
  if (net.output_count() != env::action_count(setup.env.agent_kind)) {
    throw std::invalid_argument("network head does not match the agent's action count");
  }
  auto policy = [&net](const env::TrafficEnv& env) {
    return dqn::greedy_action(net.forward(std::span<const double>(env.observation())));
  };
  return run_episode(initial, setup.env, setup.world, policy, trace);
}

EpisodeResult rollout_reference(const sim::World& initial, const EvalSetup& setup,
                                std::vector<sim::World>* trace) {
  env::EnvConfig config = setup.env;
  config.agent_kind = env::AgentKind::kAgent1;
  const bool lane_changes = setup.scenario.scenario_case == sim::ScenarioCase::kHighway;
  auto policy = [&](const env::TrafficEnv& env) {
    if (!lane_changes) return 0;
    switch (driver::reference_lane_decision(env.world(), setup.world, setup.mobil)) {
      case driver::LaneDecision::kChangeLeft: return 1;
      case driver::LaneDecision::kChangeRight: return 2;
      case driver::LaneDecision::kStay: break;
    }
    return 0;
  };
  return run_episode(initial, config, setup.world, policy, trace);
}

std::vector<std::uint64_t> episode_seeds(std::uint64_t base, Stream stream, std::uint64_t first_index,
                                         std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_seed(base, stream, first_index + i);
  return seeds;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t n_threads = std::min<std::size_t>(std::max(workers, 1), count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += n_threads) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& thread : threads) thread.join();
  if (error) std::rethrow_exception(error);
}

std::vector<ComparisonRecord> compare_episodes(const nn::QNetwork& net, const EvalSetup& setup,
                                               std::span<const std::uint64_t> seeds, int workers) {
  std::vector<ComparisonRecord> records(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    const sim::World initial = setup.make_world(seeds[i]);
    ComparisonRecord& rec = records[i];
    rec.seed = seeds[i];
    rec.agent = rollout_agent(net, initial, setup);
    rec.reference = rollout_reference(initial, setup);
    rec.perf_index = rec.reference.completed
                         ? performance_index(rec.agent, rec.reference, setup.d_max())
                         : std::numeric_limits<double>::quiet_NaN();
  });
  return records;
}

std::vector<BaselineRecord> baseline_episodes(const EvalSetup& setup,
                                              std::span<const std::uint64_t> seeds, int workers) {
  std::vector<BaselineRecord> records(seeds.size());
  parallel_for(seeds.size(), workers, [&](std::size_t i) {
    records[i].seed = seeds[i];
    records[i].result = rollout_reference(setup.make_world(seeds[i]), setup);
  });
  return records;
}

}  // namespace lanecraft::eval
