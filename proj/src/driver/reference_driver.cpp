#include "lanecraft/driver/reference_driver.hpp"

#include <cmath>
#include <limits>

#include "lanecraft/driver/idm.hpp"

namespace lanecraft::driver {

namespace {

using sim::Vehicle;
using sim::World;

double v0_of(const Vehicle& v, const sim::WorldParams& params) {
  return v.externally_controlled() ? params.v_max_ego : sim::desired_speed(v);
}

double raw_idm(const Vehicle& self, const Vehicle* leader, const sim::WorldParams& params) {
  const double v0 = v0_of(self, params);
  if (leader == nullptr) return idm_free_acceleration(self.speed, v0, params.idm);
  const double lead_speed = leader->velocity_x() * self.direction;
  return idm_acceleration(self.speed, v0, sim::bumper_gap(self, *leader),
                          self.speed - lead_speed, params.idm);
}

struct Neighbors {
  const Vehicle* leader = nullptr;
  const Vehicle* follower = nullptr;
  bool blocked = false;
};

// Same-direction neighbours of a probe vehicle within one lane.
Neighbors neighbors_in_lane(const World& world, const Vehicle& probe, int lane) {
  Neighbors out;
  const std::uint32_t mask = 1u << lane;
  double ahead_best = std::numeric_limits<double>::infinity();
  double behind_best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < world.vehicles.size(); ++j) {
    const Vehicle& other = world.vehicles[j];
    if (other.direction != probe.direction) continue;
    if ((sim::lane_occupancy(other, world.road) & mask) == 0) continue;
    if (sim::bumper_gap(probe, other) <= 0) {
      out.blocked = true;
      continue;
    }
    const double ahead = probe.direction * (other.x - probe.x);
    if (ahead > 0 && ahead < ahead_best) {
      ahead_best = ahead;
      out.leader = &other;
    } else if (ahead <= 0 && -ahead < behind_best) {
      behind_best = -ahead;
      out.follower = &other;
    }
  }
  return out;
}

}  // namespace

std::optional<LaneChangeOption> evaluate_lane_change(const World& world, int target_lane,
                                                     const sim::WorldParams& params) {
  if (!world.road.has_lane(target_lane) || world.road.is_oncoming(target_lane)) return std::nullopt;
  const Vehicle& ego = world.ego();
  if (target_lane == ego.target_lane) return std::nullopt;

  Vehicle moved = ego;
  moved.y = world.road.centerline(target_lane);
  moved.current_lane = target_lane;
  moved.target_lane = target_lane;

  const Neighbors current = neighbors_in_lane(world, ego, ego.target_lane);
  const Neighbors target = neighbors_in_lane(world, moved, target_lane);
  if (target.blocked) return std::nullopt;

  LaneChangeOption option;
  option.ego_before = raw_idm(ego, current.leader, params);
  option.ego_after = raw_idm(moved, target.leader, params);
  if (target.follower != nullptr) {
    option.new_follower_before = raw_idm(*target.follower, target.leader, params);
    option.new_follower_after = raw_idm(*target.follower, &moved, params);
  }
  if (current.follower != nullptr) {
    option.old_follower_before = raw_idm(*current.follower, &ego, params);
    option.old_follower_after = raw_idm(*current.follower, current.leader, params);
  }
  return option;
}

LaneDecision reference_lane_decision(const World& world, const sim::WorldParams& params,
                                     const MobilParams& mobil) {
  const Vehicle& ego = world.ego();
  if (sim::lane_change_in_progress(ego, world.road, params.lateral)) return LaneDecision::kStay;
  const int lane = ego.target_lane;
  return mobil_decide(evaluate_lane_change(world, lane + 1, params),
                      evaluate_lane_change(world, lane - 1, params), mobil);
}

}  // namespace lanecraft::driver
