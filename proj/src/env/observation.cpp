#include "lanecraft/env/observation.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lanecraft::env {

void ObservationNormalization::validate() const {
  if (!(ds_max > 0)) throw std::invalid_argument("env.ds_max must be positive");
  if (!(v_max > 0)) throw std::invalid_argument("env.v_norm_max must be positive");
  if (!(v_ego_max > 0)) throw std::invalid_argument("v_ego_max must be positive");
}

Observation encode_observation(const sim::World& world, const ObservationNormalization& norm) {
  const std::size_t others = world.vehicles.size() - 1;
  if (others > kMaxSurrounding) {
    throw std::invalid_argument("observation supports at most 8 surrounding vehicles, got " +
                                std::to_string(others));
  }
  const sim::Vehicle& ego = world.ego();
  const int ego_lane = ego.target_lane;

  Observation obs{};
  obs[0] = ego.speed / norm.v_ego_max;
  obs[1] = world.road.has_lane(ego_lane + 1) ? 1.0 : 0.0;
  obs[2] = world.road.has_lane(ego_lane - 1) ? 1.0 : 0.0;

  struct Slot {
    double ds;
    int id;
    double dv;
    double lane;
  };
  std::vector<Slot> slots;
  slots.reserve(others);
  for (std::size_t j = 1; j < world.vehicles.size(); ++j) {
    const sim::Vehicle& v = world.vehicles[j];
    const double ds = std::clamp((v.x - ego.x) / norm.ds_max, -1.0, 1.0);
    const double dv = (v.velocity_x() - ego.velocity_x()) / norm.v_max;
    const double lane = std::clamp(v.current_lane - ego_lane, -2, 2) * 0.5;
    slots.push_back({ds, v.id, dv, lane});
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    return a.ds != b.ds ? a.ds < b.ds : a.id < b.id;
  });

  std::size_t k = kEgoFeatures;
  for (const Slot& s : slots) {
    obs[k++] = s.ds;
    obs[k++] = s.dv;
    obs[k++] = s.lane;
  }
  for (std::size_t pad = 0; k < kObservationSize; ++pad) {
    obs[k++] = 1.0;
    obs[k++] = 0.0;
    obs[k++] = pad % 2 == 0 ? 1.0 : -1.0;
  }
  return obs;
}

}  // namespace lanecraft::env
