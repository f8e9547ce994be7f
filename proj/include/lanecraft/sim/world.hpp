#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lanecraft/driver/idm.hpp"
#include "lanecraft/sim/road.hpp"
#include "lanecraft/sim/vehicle.hpp"

namespace lanecraft::sim {

/// Two-point (near/far preview) lane keeping law: curvature
/// k = k_near * theta_near + k_far * theta_far, where theta_* is the visual angle
/// to a preview point on the target centerline minus the current heading.
/// The defaults make a lane change at 25 m/s settle in about 2.5 s.
struct LateralControllerParams {
  double k_near = 0.056;
  double k_far = 0.118;
  double near_distance = 10.0;  ///< [m]
  double far_distance = 60.0;   ///< [m]
  double settle_tolerance = 0.1;  ///< lateral error counted as "in lane" [m]

  void validate() const;
};

struct WorldParams {
  driver::IdmParams idm;
  LateralControllerParams lateral;
  double max_braking = 9.0;          ///< physical deceleration limit [m/s^2]
  double near_collision_gap = 4.8;   ///< [m]
  double v_max_ego = 25.0;           ///< [m/s]

  void validate() const;
};

/// Simulation state. vehicles[0] is the ego vehicle.
struct World {
  RoadConfig road;
  std::vector<Vehicle> vehicles;
  double time_s = 0;

  const Vehicle& ego() const { return vehicles.front(); }
  Vehicle& ego() { return vehicles.front(); }
};

/// Longitudinal command for the ego over one substep.
class EgoCommand {
 public:
  static EgoCommand acceleration(double mps2) { return EgoCommand(false, mps2); }
  /// Delegate speed control to the IDM with desired speed v_max_ego.
  static EgoCommand idm() { return EgoCommand(true, 0.0); }

  bool uses_idm() const { return idm_; }
  double value() const { return accel_; }

 private:
  EgoCommand(bool idm, double accel) : idm_(idm), accel_(accel) {}
  bool idm_;
  double accel_;
};

enum class CollisionKind { kNone, kCollision, kNearCollision, kOffRoad };

const char* to_string(CollisionKind kind);

struct CollisionReport {
  CollisionKind kind = CollisionKind::kNone;
  std::optional<int> other_vehicle_id;
  double gap = 0;  ///< bumper gap to the involved (or nearest same-lane) vehicle [m]
};

struct StepResult {
  World world;
  CollisionReport report;
};

struct LongitudinalUpdate {
  double displacement;  ///< distance travelled along the travel direction [m]
  double speed;         ///< speed at the end of the step [m/s]
};

/// Exact constant-acceleration update with the speed clamped to [0, v_max];
/// once a bound is hit the vehicle continues at that bound.
LongitudinalUpdate integrate_longitudinal(double speed, double accel, double dt, double v_max);

/// Bumper-to-bumper longitudinal clearance (negative when bodies overlap).
double bumper_gap(const Vehicle& a, const Vehicle& b);

/// Lanes touched by the vehicle body.
std::uint32_t lane_occupancy(const Vehicle& v, const RoadConfig& road);

/// Symmetric pairwise contact test: collision when the bodies overlap both
/// longitudinally and laterally; near collision when they share a lane and the
/// bumper gap is below `near_gap` without overlap.
CollisionKind classify_pair(const Vehicle& a, const Vehicle& b, const RoadConfig& road,
                            double near_gap);

/// Closest vehicle ahead in the travel direction of vehicles[index] that shares
/// a lane with it.
std::optional<std::size_t> find_leader(const World& world, std::size_t index);

/// Acceleration the IDM requests for vehicles[index] given its current leader,
/// clamped below by -max_braking. Overlap with the leader yields full braking.
double idm_command(const World& world, std::size_t index, double v0, const WorldParams& params);

/// Desired speed of a profile-driven vehicle at its current position.
double desired_speed(const Vehicle& v);

/// True while the lateral position is outside the settle tolerance of the
/// target centerline.
bool lane_change_in_progress(const Vehicle& v, const RoadConfig& road,
                             const LateralControllerParams& lateral);

/// Worst ego event in the current configuration (collision over near
/// collision; ties by smaller gap).
CollisionReport detect_ego_events(const World& world, const WorldParams& params);

/// Advances the world by one substep. Non-ego vehicles follow the IDM toward
/// their profile speed and keep their lanes; the ego follows `command` with its
/// speed clamped to [0, v_max_ego] and steers toward `ego_target_lane`. A
/// target lane outside the road yields an off-road report and an unchanged world.
StepResult step_world(const World& world, EgoCommand command, int ego_target_lane, double dt,
                      const WorldParams& params);

}  // namespace lanecraft::sim
