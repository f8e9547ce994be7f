#include "lanecraft/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lanecraft::sim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void steer(Vehicle& v, const RoadConfig& road, const LateralControllerParams& p, double dt) {
  const double error = road.centerline(v.target_lane) - v.y;
  if (error == 0.0 && v.heading == 0.0) return;
  const double theta_near = std::atan(error / p.near_distance) - v.heading;
  const double theta_far = std::atan(error / p.far_distance) - v.heading;
  const double curvature = p.k_near * theta_near + p.k_far * theta_far;
  v.heading += v.speed * curvature * dt;
  v.y += v.speed * std::tan(v.heading) * dt;
}

bool finite_state(const Vehicle& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.speed) &&
         std::isfinite(v.heading);
}

int severity(CollisionKind kind) {
  switch (kind) {
    case CollisionKind::kOffRoad: return 3;
    case CollisionKind::kCollision: return 2;
    case CollisionKind::kNearCollision: return 1;
    case CollisionKind::kNone: return 0;
  }
  return 0;
}

}  // namespace

const char* to_string(CollisionKind kind) {
  switch (kind) {
    case CollisionKind::kNone: return "none";
    case CollisionKind::kCollision: return "collision";
    case CollisionKind::kNearCollision: return "near_collision";
    case CollisionKind::kOffRoad: return "off_road";
  }
  return "unknown";
}

void LateralControllerParams::validate() const {
  if (!(k_near >= 0) || !(k_far >= 0) || k_near + k_far <= 0) {
    throw std::invalid_argument("lateral gains must be nonnegative and not both zero");
  }
  if (!(near_distance > 0) || !(far_distance > 0)) {
    throw std::invalid_argument("lateral preview distances must be positive");
  }
  if (!(settle_tolerance > 0)) throw std::invalid_argument("settle_tolerance must be positive");
}

void WorldParams::validate() const {
  idm.validate();
  lateral.validate();
  if (!(max_braking > 0)) throw std::invalid_argument("max_braking must be positive");
  if (!(near_collision_gap >= 0)) throw std::invalid_argument("near_collision_gap must be >= 0");
  if (!(v_max_ego > 0)) throw std::invalid_argument("v_max_ego must be positive");
}

LongitudinalUpdate integrate_longitudinal(double speed, double accel, double dt, double v_max) {
  const double unclamped = speed + accel * dt;
  if (unclamped < 0.0) {
    const double t_stop = accel < 0 ? std::min(dt, speed / -accel) : 0.0;
    return {speed * t_stop + 0.5 * accel * t_stop * t_stop, 0.0};
  }
  if (unclamped > v_max) {
    const double t_cap = accel > 0 ? std::clamp((v_max - speed) / accel, 0.0, dt) : 0.0;
    const double before = speed * t_cap + 0.5 * accel * t_cap * t_cap;
    return {before + v_max * (dt - t_cap), v_max};
  }
  return {speed * dt + 0.5 * accel * dt * dt, unclamped};
}

double bumper_gap(const Vehicle& a, const Vehicle& b) {
  return std::abs(a.x - b.x) - 0.5 * (a.length + b.length);
}

std::uint32_t lane_occupancy(const Vehicle& v, const RoadConfig& road) {
  return road.lanes_overlapping(v.y - 0.5 * v.width, v.y + 0.5 * v.width);
}

CollisionKind classify_pair(const Vehicle& a, const Vehicle& b, const RoadConfig& road,
                            double near_gap) {
  const bool longitudinal = a.rear() < b.front() && b.rear() < a.front();
  const bool lateral = (a.y - 0.5 * a.width) < (b.y + 0.5 * b.width) &&
                       (b.y - 0.5 * b.width) < (a.y + 0.5 * a.width);
  if (longitudinal && lateral) return CollisionKind::kCollision;
  const bool same_lane = (lane_occupancy(a, road) & lane_occupancy(b, road)) != 0;
  if (same_lane && bumper_gap(a, b) < near_gap) return CollisionKind::kNearCollision;
  return CollisionKind::kNone;
}

std::optional<std::size_t> find_leader(const World& world, std::size_t index) {
  const Vehicle& self = world.vehicles[index];
  const std::uint32_t lanes = lane_occupancy(self, world.road);
  std::optional<std::size_t> leader;
  double best = kInf;
  for (std::size_t j = 0; j < world.vehicles.size(); ++j) {
    if (j == index) continue;
    const Vehicle& other = world.vehicles[j];
    if ((lane_occupancy(other, world.road) & lanes) == 0) continue;
    const double ahead = self.direction * (other.x - self.x);
    if (ahead > 0 && ahead < best) {
      best = ahead;
      leader = j;
    }
  }
  return leader;
}

double idm_command(const World& world, std::size_t index, double v0, const WorldParams& params) {
  const Vehicle& self = world.vehicles[index];
  double accel;
  if (const auto leader = find_leader(world, index)) {
    const Vehicle& lead = world.vehicles[*leader];
    const double gap = bumper_gap(self, lead);
    if (gap <= 0) return -params.max_braking;
    const double lead_speed = lead.velocity_x() * self.direction;
    accel = driver::idm_acceleration(self.speed, v0, gap, self.speed - lead_speed, params.idm);
  } else {
    accel = driver::idm_free_acceleration(self.speed, v0, params.idm);
  }
  return std::max(accel, -params.max_braking);
}

double desired_speed(const Vehicle& v) {
  if (!v.profile) throw std::logic_error("vehicle has no speed profile");
  return v.profile->desired_speed(v.x);
}

bool lane_change_in_progress(const Vehicle& v, const RoadConfig& road,
                             const LateralControllerParams& lateral) {
  return std::abs(road.centerline(v.target_lane) - v.y) > lateral.settle_tolerance;
}

CollisionReport detect_ego_events(const World& world, const WorldParams& params) {
  CollisionReport report;
  report.gap = kInf;
  const Vehicle& ego = world.ego();
  const std::uint32_t ego_lanes = lane_occupancy(ego, world.road);
  for (std::size_t j = 1; j < world.vehicles.size(); ++j) {
    const Vehicle& other = world.vehicles[j];
    const CollisionKind kind = classify_pair(ego, other, world.road, params.near_collision_gap);
    const double gap = bumper_gap(ego, other);
    if (severity(kind) > severity(report.kind) ||
        (kind == report.kind && kind != CollisionKind::kNone && gap < report.gap)) {
      report = {kind, other.id, gap};
    } else if (report.kind == CollisionKind::kNone && kind == CollisionKind::kNone &&
               (lane_occupancy(other, world.road) & ego_lanes) != 0 && gap < report.gap) {
      report.gap = gap;
    }
  }
  return report;
}

StepResult step_world(const World& world, EgoCommand command, int ego_target_lane, double dt,
                      const WorldParams& params) {
  if (!(dt > 0)) throw std::invalid_argument("step_world requires dt > 0");
  if (!world.road.has_lane(ego_target_lane)) {
    return {world, CollisionReport{CollisionKind::kOffRoad, std::nullopt, 0.0}};
  }

  const std::size_t n = world.vehicles.size();
  std::vector<double> accel(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vehicle& v = world.vehicles[i];
    if (i == 0) {
      accel[i] = command.uses_idm() ? idm_command(world, 0, params.v_max_ego, params)
                                    : command.value();
    } else {
      accel[i] = idm_command(world, i, desired_speed(v), params);
    }
  }

  World next = world;
  next.ego().target_lane = ego_target_lane;
  for (std::size_t i = 0; i < n; ++i) {
    Vehicle& v = next.vehicles[i];
    const double v_max = i == 0 ? params.v_max_ego : kInf;
    const double speed_before = v.speed;
    const LongitudinalUpdate update = integrate_longitudinal(v.speed, accel[i], dt, v_max);
    // Lateral motion uses the speed held at the start of the substep.
    v.speed = speed_before;
    steer(v, next.road, params.lateral, dt);
    v.x += v.direction * update.displacement;
    v.speed = update.speed;
    v.current_lane = next.road.nearest_lane(v.y);
    if (!finite_state(v)) throw std::logic_error("non-finite vehicle state in step_world");
  }
  next.time_s += dt;
  CollisionReport report = detect_ego_events(next, params);
  return {std::move(next), report};
}

}  // namespace lanecraft::sim
