#pragma once

#include "lanecraft/sim/world.hpp"

namespace lanecraft::env {

struct RewardConfig {
  double collision_penalty = -10.0;
  double near_collision_penalty = -10.0;
  double lane_change_penalty = -1.0;
  double decision_dt = 1.0;  ///< [s]
  double v_max_ego = 25.0;   ///< [m/s]

  double max_step_distance() const { return decision_dt * v_max_ego; }
  void validate() const;
};

/// Collision and off-road return exactly the collision penalty. Otherwise the
/// normalized distance plus the near-collision and lane-change penalties.
double compute_reward(double distance_m, bool lane_change_action, const sim::CollisionReport& report,
                      const RewardConfig& config);

}  // namespace lanecraft::env
