#pragma once

#include <vector>

#include "lanecraft/env/actions.hpp"
#include "lanecraft/env/observation.hpp"
#include "lanecraft/env/reward.hpp"
#include "lanecraft/sim/world.hpp"

namespace lanecraft::env {

/// kTimeLimit truncates an episode that runs out of decision steps; it is not
/// a failure and is not bootstrapped as terminal by the trainer.
enum class TerminalCause { kNone, kCollision, kOffRoad, kEpisodeComplete, kTimeLimit };

const char* to_string(TerminalCause cause);

struct EnvConfig {
  AgentKind agent_kind = AgentKind::kAgent1;
  ObservationNormalization normalization;
  RewardConfig reward;
  double decision_dt = 1.0;  ///< [s]
  double substep_dt = 0.1;   ///< [s]
  int max_steps = 200;       ///< decision steps before truncation

  int substeps() const;
  void validate() const;
};

struct StepOutcome {
  Observation observation{};
  double reward = 0;
  bool terminal = false;
  TerminalCause cause = TerminalCause::kNone;
  sim::CollisionReport info;
  double distance_m = 0;  ///< ego distance covered in this decision step
};

/// Per-episode bookkeeping.
struct EpisodeStats {
  double distance_m = 0;  ///< clipped to the episode length
  double elapsed_s = 0;   ///< completion time is interpolated inside the last substep
  int steps = 0;
  int lane_changes = 0;
  int near_collision_steps = 0;
  std::vector<long> action_counts;
  TerminalCause cause = TerminalCause::kNone;

  double mean_speed() const { return elapsed_s > 0 ? distance_m / elapsed_s : 0.0; }
};

/// One episode of the decision problem: 1 s decisions over 0.1 s substeps.
class TrafficEnv {
 public:
  TrafficEnv(EnvConfig config, sim::WorldParams params);

  const Observation& reset(sim::World initial);
  StepOutcome step(int action);

  bool done() const { return done_; }
  const sim::World& world() const { return world_; }
  const Observation& observation() const { return observation_; }
  const EpisodeStats& stats() const { return stats_; }
  const EnvConfig& config() const { return config_; }
  const sim::WorldParams& world_params() const { return params_; }

 private:
  EnvConfig config_;
  sim::WorldParams params_;
  sim::World world_;
  Observation observation_{};
  EpisodeStats stats_;
  double start_x_ = 0;
  bool done_ = true;
};

}  // namespace lanecraft::env
