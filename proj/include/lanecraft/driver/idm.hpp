#pragma once

namespace lanecraft::driver {

/// Intelligent Driver Model parameters. Defaults are the classic highway set.
struct IdmParams {
  double d0 = 2.0;     ///< minimum gap [m]
  double T = 1.6;      ///< safe time headway [s]
  double a = 0.7;      ///< maximal acceleration [m/s^2]
  double b = 1.7;      ///< desired deceleration [m/s^2]
  double delta = 4.0;  ///< acceleration exponent

  void validate() const;
};

/// Desired dynamic gap d*(v, dv). The speed-dependent part is floored at zero so
/// a leader pulling away quickly never yields d* < d0.
double idm_desired_gap(double v, double approach_rate, const IdmParams& p);

/// IDM acceleration for a follower at speed `v` with desired speed `v0`.
/// `gap` is the bumper-to-bumper clearance; pass +infinity for a free road
/// (the interaction term then vanishes). `approach_rate` is v - v_leader.
/// Throws std::domain_error for gap <= 0: collisions must be handled first.
double idm_acceleration(double v, double v0, double gap, double approach_rate,
                        const IdmParams& p);

/// Free-road acceleration, i.e. idm_acceleration with gap = +infinity.
double idm_free_acceleration(double v, double v0, const IdmParams& p);

}  // namespace lanecraft::driver
