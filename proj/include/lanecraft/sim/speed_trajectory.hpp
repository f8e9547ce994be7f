#pragma once

#include <vector>

#include "lanecraft/common/rng.hpp"

namespace lanecraft::sim {

struct SpeedBreakpoint {
  double position_m;
  double speed_mps;

  bool operator==(const SpeedBreakpoint&) const = default;
};

/// Desired speed as a piecewise-linear function of road position. Outside the
/// breakpoint span the nearest end value holds.
class SpeedTrajectory {
 public:
  explicit SpeedTrajectory(std::vector<SpeedBreakpoint> breakpoints);

  double desired_speed(double position_m) const;
  const std::vector<SpeedBreakpoint>& breakpoints() const { return breakpoints_; }

  bool operator==(const SpeedTrajectory&) const = default;

 private:
  std::vector<SpeedBreakpoint> breakpoints_;
};

struct SpeedRange {
  double lo;
  double hi;
};

/// Breakpoint spacing for generated trajectories [m].
struct BreakpointSpacing {
  double min_m = 100.0;
  double max_m = 250.0;
};

/// Random trajectory covering [from_m, to_m]: breakpoints every U(spacing) metres,
/// each with desired speed U(range). A degenerate range gives a constant profile.
SpeedTrajectory generate_speed_trajectory(SpeedRange range, double from_m, double to_m,
                                          Rng& rng, BreakpointSpacing spacing = {});

}  // namespace lanecraft::sim
