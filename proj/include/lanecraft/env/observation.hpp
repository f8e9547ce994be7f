#pragma once

#include <array>
#include <cstddef>

#include "lanecraft/sim/world.hpp"

namespace lanecraft::env {

inline constexpr std::size_t kMaxSurrounding = 8;
inline constexpr std::size_t kEgoFeatures = 3;
inline constexpr std::size_t kObjectFeatures = 3;
inline constexpr std::size_t kObservationSize = kEgoFeatures + kMaxSurrounding * kObjectFeatures;

/// [v_ego / v_ego_max, lane-left flag, lane-right flag, then per vehicle slot
/// (ds / ds_max, dv / v_max, lane offset / 2)].
using Observation = std::array<double, kObservationSize>;

struct ObservationNormalization {
  double ds_max = 200.0;  ///< relative distances clip to +-1 beyond this [m]
  double v_max = 33.3;    ///< relative speed scale [m/s]
  double v_ego_max = 25.0;

  void validate() const;
};

/// Slots are ordered by signed relative distance (ascending, ties by id).
/// Missing vehicles are padded with (+1, 0, +-1) alternating from +1. The ego
/// lane used for flags and offsets is its target lane.
/// Throws std::invalid_argument for more than 8 surrounding vehicles.
Observation encode_observation(const sim::World& world, const ObservationNormalization& norm);

}  // namespace lanecraft::env
