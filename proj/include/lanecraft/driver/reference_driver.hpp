#pragma once

#include <optional>

#include "lanecraft/driver/mobil.hpp"
#include "lanecraft/sim/world.hpp"

namespace lanecraft::driver {

/// IDM predictions for the ego moving into `target_lane`, or nullopt when the
/// lane does not exist, carries oncoming traffic, or is physically blocked
/// alongside the ego. Accelerations are raw IDM values (no braking limit).
std::optional<LaneChangeOption> evaluate_lane_change(const sim::World& world, int target_lane,
                                                     const sim::WorldParams& params);

/// MOBIL decision for the ego relative to its target lane. While a lane change
/// is still in progress the reference keeps its current plan.
LaneDecision reference_lane_decision(const sim::World& world, const sim::WorldParams& params,
                                     const MobilParams& mobil);

}  // namespace lanecraft::driver
