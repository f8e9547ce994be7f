#include "lanecraft/driver/idm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lanecraft::driver {

void IdmParams::validate() const {
  if (!(d0 > 0)) throw std::invalid_argument("idm.d0 must be positive");
  if (!(T > 0)) throw std::invalid_argument("idm.T must be positive");
  if (!(a > 0)) throw std::invalid_argument("idm.a must be positive");
  if (!(b > 0)) throw std::invalid_argument("idm.b must be positive");
  if (!(delta >= 1)) throw std::invalid_argument("idm.delta must be >= 1");
}

double idm_desired_gap(double v, double approach_rate, const IdmParams& p) {
  const double dynamic = v * p.T + v * approach_rate / (2.0 * std::sqrt(p.a * p.b));
  return p.d0 + std::max(0.0, dynamic);
}

double idm_free_acceleration(double v, double v0, const IdmParams& p) {
  if (!(v0 > 0)) throw std::domain_error("IDM desired speed must be positive");
  return p.a * (1.0 - std::pow(v / v0, p.delta));
}

double idm_acceleration(double v, double v0, double gap, double approach_rate,
                        const IdmParams& p) {
  if (!(gap > 0)) {
    throw std::domain_error("IDM gap must be positive, got " + std::to_string(gap));
  }
  const double free = idm_free_acceleration(v, v0, p);
  if (std::isinf(gap)) return free;
  const double ratio = idm_desired_gap(v, approach_rate, p) / gap;
  return free - p.a * ratio * ratio;
}

}  // namespace lanecraft::driver
