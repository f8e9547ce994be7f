#include "lanecraft/env/reward.hpp"

#include <stdexcept>

namespace lanecraft::env {

void RewardConfig::validate() const {
  if (!(decision_dt > 0) || !(v_max_ego > 0)) {
    throw std::invalid_argument("reward normalization requires decision_dt > 0 and v_max_ego > 0");
  }
}

double compute_reward(double distance_m, bool lane_change_action, const sim::CollisionReport& report,
                      const RewardConfig& config) {
  using sim::CollisionKind;
  if (report.kind == CollisionKind::kCollision || report.kind == CollisionKind::kOffRoad) {
    return config.collision_penalty;
  }
  if (distance_m < 0) throw std::invalid_argument("distance driven must be nonnegative");
  double reward = distance_m / config.max_step_distance();
  if (report.kind == CollisionKind::kNearCollision) reward += config.near_collision_penalty;
  if (lane_change_action) reward += config.lane_change_penalty;
  return reward;
}

}  // namespace lanecraft::env
