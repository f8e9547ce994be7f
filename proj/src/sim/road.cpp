#include "lanecraft/sim/road.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lanecraft::sim {

RoadConfig RoadConfig::highway(double lane_width, double d_max) {
  return RoadConfig{3, lane_width, d_max, std::vector<bool>(3, false)};
}

RoadConfig RoadConfig::overtaking(double lane_width, double d_max) {
  return RoadConfig{2, lane_width, d_max, std::vector<bool>{false, true}};
}

void RoadConfig::validate() const {
  if (lane_count < 2 || lane_count > 32) throw std::invalid_argument("lane_count must be in [2, 32]");
  if (!(lane_width > 0)) throw std::invalid_argument("lane_width must be positive");
  if (!(d_max > 0)) throw std::invalid_argument("d_max must be positive");
  if (static_cast<int>(oncoming_lane_mask.size()) != lane_count) {
    throw std::invalid_argument("oncoming_lane_mask size must equal lane_count");
  }
}

int RoadConfig::nearest_lane(double y) const {
  const int lane = static_cast<int>(std::lround(y / lane_width));
  return std::clamp(lane, 0, lane_count - 1);
}

std::uint32_t RoadConfig::lanes_overlapping(double y_lo, double y_hi) const {
  std::uint32_t mask = 0;
  for (int lane = 0; lane < lane_count; ++lane) {
    const double lo = centerline(lane) - 0.5 * lane_width;
    const double hi = centerline(lane) + 0.5 * lane_width;
    if (y_hi > lo && y_lo < hi) mask |= (1u << lane);
  }
  return mask;
}

}  // namespace lanecraft::sim
