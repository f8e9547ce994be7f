#pragma once

#include <string>

#include "lanecraft/sim/world.hpp"

namespace lanecraft::env {

/// Agent1 picks lanes only (speed by IDM); Agent2 picks lanes and accelerations.
enum class AgentKind { kAgent1, kAgent2 };

const char* to_string(AgentKind kind);
AgentKind agent_kind_from_string(const std::string& name);

/// 3 for Agent1, 6 for Agent2.
int action_count(AgentKind kind);

/// What one discrete action does over the next decision interval.
struct ActionEffect {
  sim::EgoCommand command = sim::EgoCommand::idm();
  int lane_delta = 0;  ///< +1 = one lane left, -1 = one lane right
  bool is_lane_change() const { return lane_delta != 0; }
};

/// Agent1: 0 stay, 1 change left, 2 change right.
/// Agent2: 0 keep speed, 1 accelerate -2, 2 accelerate -9, 3 accelerate +2,
///         4 change left keeping speed, 5 change right keeping speed.
ActionEffect decode_action(AgentKind kind, int action);

}  // namespace lanecraft::env
