#include "lanecraft/sim/speed_trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace lanecraft::sim {

SpeedTrajectory::SpeedTrajectory(std::vector<SpeedBreakpoint> breakpoints)
    : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.empty()) throw std::invalid_argument("speed trajectory needs a breakpoint");
  for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i].position_m > breakpoints_[i - 1].position_m)) {
      throw std::invalid_argument("speed trajectory positions must be strictly increasing");
    }
  }
  for (const auto& bp : breakpoints_) {
    if (!(bp.speed_mps >= 0)) throw std::invalid_argument("speed trajectory speeds must be >= 0");
  }
}

double SpeedTrajectory::desired_speed(double position_m) const {
  if (position_m <= breakpoints_.front().position_m) return breakpoints_.front().speed_mps;
  if (position_m >= breakpoints_.back().position_m) return breakpoints_.back().speed_mps;
  auto upper = std::upper_bound(
      breakpoints_.begin(), breakpoints_.end(), position_m,
      [](double pos, const SpeedBreakpoint& bp) { return pos < bp.position_m; });
  const auto& hi = *upper;
  const auto& lo = *(upper - 1);
  const double t = (position_m - lo.position_m) / (hi.position_m - lo.position_m);
  return lo.speed_mps + t * (hi.speed_mps - lo.speed_mps);
}

SpeedTrajectory generate_speed_trajectory(SpeedRange range, double from_m, double to_m,
                                          Rng& rng, BreakpointSpacing spacing) {
  if (range.lo > range.hi) throw std::invalid_argument("speed range must satisfy lo <= hi");
  if (!(to_m > from_m)) throw std::invalid_argument("trajectory span must be positive");
  if (!(spacing.min_m > 0) || spacing.max_m < spacing.min_m) {
    throw std::invalid_argument("invalid breakpoint spacing");
  }
  auto draw_speed = [&] { return range.lo == range.hi ? range.lo : uniform(rng, range.lo, range.hi); };

  std::vector<SpeedBreakpoint> points;
  double position = from_m;
  points.push_back({position, draw_speed()});
  while (position < to_m) {
    const double step =
        spacing.min_m == spacing.max_m ? spacing.min_m : uniform(rng, spacing.min_m, spacing.max_m);
    position += step;
    points.push_back({position, draw_speed()});
  }
  return SpeedTrajectory(std::move(points));
}

}  // namespace lanecraft::sim
