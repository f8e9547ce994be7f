#pragma once

#include <optional>

namespace lanecraft::driver {

struct MobilParams {
  double p = 0.0;       ///< politeness factor
  double a_th = 0.1;    ///< changing threshold [m/s^2]
  double b_safe = 4.0;  ///< maximum safe deceleration imposed on the new follower [m/s^2]

  void validate() const;
};

enum class LaneDecision { kStay, kChangeLeft, kChangeRight };

/// IDM-predicted accelerations for one candidate lane. "before" values assume
/// the ego stays; "after" values assume the change has been carried out.
struct LaneChangeOption {
  double ego_before = 0;
  double ego_after = 0;
  double new_follower_before = 0;
  double new_follower_after = 0;
  double old_follower_before = 0;
  double old_follower_after = 0;
};

double mobil_gain(const LaneChangeOption& option, const MobilParams& params);

/// Safety criterion on the follower in the target lane.
bool mobil_is_safe(const LaneChangeOption& option, const MobilParams& params);

/// Chooses between staying and the available candidates (nullopt = no lane).
/// Equal gains on both sides resolve to the left lane.
LaneDecision mobil_decide(const std::optional<LaneChangeOption>& left,
                          const std::optional<LaneChangeOption>& right,
                          const MobilParams& params);

}  // namespace lanecraft::driver
