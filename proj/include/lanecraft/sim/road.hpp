#pragma once

#include <cstdint>
#include <vector>

namespace lanecraft::sim {

/// Straight multi-lane road. Lane 0 is the rightmost lane and indices grow to
/// the left; lane i has its centerline at y = i * lane_width.
struct RoadConfig {
  int lane_count = 3;
  double lane_width = 3.5;
  double d_max = 800.0;  ///< episode length [m]
  std::vector<bool> oncoming_lane_mask = std::vector<bool>(3, false);

  static RoadConfig highway(double lane_width, double d_max);
  /// Two lanes, the left one carrying oncoming traffic.
  static RoadConfig overtaking(double lane_width, double d_max);

  void validate() const;

  bool has_lane(int lane) const { return lane >= 0 && lane < lane_count; }
  bool is_oncoming(int lane) const { return has_lane(lane) && oncoming_lane_mask[lane]; }
  double centerline(int lane) const { return lane * lane_width; }
  int nearest_lane(double y) const;

  /// Bitmask of lanes whose strip overlaps the open interval (y_lo, y_hi).
  std::uint32_t lanes_overlapping(double y_lo, double y_hi) const;
};

}  // namespace lanecraft::sim
