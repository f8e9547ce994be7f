#include "lanecraft/env/traffic_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lanecraft::env {

const char* to_string(TerminalCause cause) {
  switch (cause) {
    case TerminalCause::kNone: return "none";
    case TerminalCause::kCollision: return "collision";
    case TerminalCause::kOffRoad: return "off_road";
    case TerminalCause::kEpisodeComplete: return "episode_complete";
    case TerminalCause::kTimeLimit: return "time_limit";
  }
  return "unknown";
}

int EnvConfig::substeps() const {
  return static_cast<int>(std::lround(decision_dt / substep_dt));
}

void EnvConfig::validate() const {
  normalization.validate();
  reward.validate();
  if (!(decision_dt > 0) || !(substep_dt > 0) || substeps() < 1) {
    throw std::invalid_argument("decision_dt and substep_dt must be positive with decision_dt >= substep_dt");
  }
  if (std::abs(substeps() * substep_dt - decision_dt) > 1e-9) {
    throw std::invalid_argument("decision_dt must be a multiple of substep_dt");
  }
  if (max_steps < 1) throw std::invalid_argument("env.max_steps must be >= 1");
}

TrafficEnv::TrafficEnv(EnvConfig config, sim::WorldParams params)
    : config_(std::move(config)), params_(std::move(params)) {
  config_.validate();
  params_.validate();
}

const Observation& TrafficEnv::reset(sim::World initial) {
  world_ = std::move(initial);
  start_x_ = world_.ego().x;
  stats_ = EpisodeStats{};
  stats_.action_counts.assign(action_count(config_.agent_kind), 0);
  observation_ = encode_observation(world_, config_.normalization);
  done_ = false;
  return observation_;
}

StepOutcome TrafficEnv::step(int action) {
  if (done_) throw std::logic_error("TrafficEnv::step called on a finished episode");
  const ActionEffect effect = decode_action(config_.agent_kind, action);
  ++stats_.action_counts[action];
  if (effect.is_lane_change()) ++stats_.lane_changes;

  const int target_lane = world_.ego().target_lane + effect.lane_delta;
  const double x_before = world_.ego().x;
  const double d_max = world_.road.d_max;

  StepOutcome out;
  bool completed = false;
  if (!world_.road.has_lane(target_lane)) {
    out.info = {sim::CollisionKind::kOffRoad, std::nullopt, 0.0};
  } else {
    for (int k = 0; k < config_.substeps(); ++k) {
      const double prev_x = world_.ego().x;
      const double prev_t = world_.time_s;
      sim::StepResult res =
          sim::step_world(world_, effect.command, target_lane, config_.substep_dt, params_);
      world_ = std::move(res.world);
      stats_.elapsed_s = world_.time_s;
      if (res.report.kind == sim::CollisionKind::kCollision) {
        out.info = res.report;
        break;
      }
      if (res.report.kind == sim::CollisionKind::kNearCollision &&
          out.info.kind != sim::CollisionKind::kNearCollision) {
        out.info = res.report;
      } else if (out.info.kind == sim::CollisionKind::kNone) {
        out.info.gap = res.report.gap;
      }
      const double x = world_.ego().x;
      if (x >= d_max) {
        const double frac = x > prev_x ? (d_max - prev_x) / (x - prev_x) : 1.0;
        stats_.elapsed_s = prev_t + frac * config_.substep_dt;
        completed = true;
        break;
      }
    }
  }

  const double x_after = std::min(world_.ego().x, std::max(d_max, x_before));
  out.distance_m = std::max(0.0, x_after - x_before);
  out.reward = compute_reward(out.distance_m, effect.is_lane_change(), out.info, config_.reward);
  ++stats_.steps;
  if (out.info.kind == sim::CollisionKind::kNearCollision) ++stats_.near_collision_steps;

  if (out.info.kind == sim::CollisionKind::kCollision) {
    out.cause = TerminalCause::kCollision;
  } else if (out.info.kind == sim::CollisionKind::kOffRoad) {
    out.cause = TerminalCause::kOffRoad;
  } else if (completed) {
    out.cause = TerminalCause::kEpisodeComplete;
  } else if (stats_.steps >= config_.max_steps) {
    out.cause = TerminalCause::kTimeLimit;
  }
  out.terminal = out.cause != TerminalCause::kNone;

  stats_.distance_m = std::clamp(world_.ego().x - start_x_, 0.0, d_max);
  stats_.cause = out.cause;
  done_ = out.terminal;
  observation_ = encode_observation(world_, config_.normalization);
  out.observation = observation_;
  return out;
}

}  // namespace lanecraft::env
