#pragma once

#include <memory>

#include "lanecraft/sim/speed_trajectory.hpp"

namespace lanecraft::sim {

/// One road user. `speed` is the nonnegative longitudinal speed along the
/// travel direction; `direction` is +1 for traffic in +x and -1 for oncoming
/// traffic. A vehicle without a speed profile is externally controlled (the ego).
struct Vehicle {
  int id = 0;
  double x = 0;        ///< longitudinal center position [m]
  double y = 0;        ///< lateral center position [m]
  double speed = 0;    ///< [m/s]
  double heading = 0;  ///< yaw relative to the travel direction [rad]
  double length = 4.8;
  double width = 1.8;
  int current_lane = 0;
  int target_lane = 0;
  int direction = 1;
  std::shared_ptr<const SpeedTrajectory> profile;

  bool externally_controlled() const { return profile == nullptr; }
  double front() const { return x + 0.5 * length; }
  double rear() const { return x - 0.5 * length; }
  /// Signed velocity along +x.
  double velocity_x() const { return direction * speed; }
};

}  // namespace lanecraft::sim
