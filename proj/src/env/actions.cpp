#include "lanecraft/env/actions.hpp"

#include <stdexcept>

namespace lanecraft::env {

const char* to_string(AgentKind kind) { return kind == AgentKind::kAgent1 ? "agent1" : "agent2"; }

AgentKind agent_kind_from_string(const std::string& name) {
  if (name == "agent1") return AgentKind::kAgent1;
  if (name == "agent2") return AgentKind::kAgent2;
  throw std::invalid_argument("unknown agent kind '" + name + "'");
}

int action_count(AgentKind kind) { return kind == AgentKind::kAgent1 ? 3 : 6; }

ActionEffect decode_action(AgentKind kind, int action) {
  if (action < 0 || action >= action_count(kind)) {
    throw std::out_of_range("action " + std::to_string(action) + " invalid for " + to_string(kind));
  }
  using sim::EgoCommand;
  if (kind == AgentKind::kAgent1) {
    static constexpr int kLaneDelta[] = {0, 1, -1};
    return {EgoCommand::idm(), kLaneDelta[action]};
  }
  switch (action) {
    case 0: return {EgoCommand::acceleration(0.0), 0};
    case 1: return {EgoCommand::acceleration(-2.0), 0};
    case 2: return {EgoCommand::acceleration(-9.0), 0};
    case 3: return {EgoCommand::acceleration(2.0), 0};
    case 4: return {EgoCommand::acceleration(0.0), 1};
    default: return {EgoCommand::acceleration(0.0), -1};
  }
}

}  // namespace lanecraft::env
