#include "lanecraft/driver/mobil.hpp"

#include <stdexcept>

namespace lanecraft::driver {

void MobilParams::validate() const {
  if (!(p >= 0)) throw std::invalid_argument("mobil.p must be >= 0");
  if (!(a_th > 0)) throw std::invalid_argument("mobil.a_th must be positive");
  if (!(b_safe > 0)) throw std::invalid_argument("mobil.b_safe must be positive");
}

double mobil_gain(const LaneChangeOption& o, const MobilParams& params) {
  return o.ego_after - o.ego_before +
         params.p * ((o.new_follower_after - o.new_follower_before) +
                     (o.old_follower_after - o.old_follower_before));
}

bool mobil_is_safe(const LaneChangeOption& o, const MobilParams& params) {
  return o.new_follower_after > -params.b_safe;
}

LaneDecision mobil_decide(const std::optional<LaneChangeOption>& left,
                          const std::optional<LaneChangeOption>& right,
                          const MobilParams& params) {
  auto incentive = [&](const std::optional<LaneChangeOption>& o) -> std::optional<double> {
    if (!o || !mobil_is_safe(*o, params)) return std::nullopt;
    const double gain = mobil_gain(*o, params);
    if (!(gain > params.a_th)) return std::nullopt;
    return gain;
  };
  const auto gain_left = incentive(left);
  const auto gain_right = incentive(right);
  if (gain_left && gain_right) {
    return *gain_right > *gain_left ? LaneDecision::kChangeRight : LaneDecision::kChangeLeft;
  }
  if (gain_left) return LaneDecision::kChangeLeft;
  if (gain_right) return LaneDecision::kChangeRight;
  return LaneDecision::kStay;
}

}  // namespace lanecraft::driver
