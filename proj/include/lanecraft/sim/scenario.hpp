#pragma once

#include <cstdint>
#include <stdexcept>

#include "lanecraft/sim/speed_trajectory.hpp"
#include "lanecraft/sim/world.hpp"

namespace lanecraft::sim {

enum class ScenarioCase { kHighway, kOvertaking };

const char* to_string(ScenarioCase c);
ScenarioCase scenario_case_from_string(const std::string& name);

/// Randomized traffic setup. Speeds in m/s, distances in m. "plus" is the
/// range for slow vehicles starting ahead of the ego, "minus" for fast
/// vehicles starting behind it.
struct ScenarioConfig {
  double d_long = 200.0;
  double d_delta = 25.0;
  double v_plus_min = 16.7;
  double v_plus_max = 23.6;
  double v_minus_min = 26.4;
  double v_minus_max = 33.3;
  double v_init_ego = 25.0;
  double v_max_ego = 25.0;
  int surrounding_vehicle_count = 8;  ///< highway only; the overtaking case always has 3
  ScenarioCase scenario_case = ScenarioCase::kHighway;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

/// Geometry and generator settings that are not part of the randomized config.
struct ScenarioOptions {
  double lane_width = 3.5;
  double d_max = 800.0;
  double ego_length = 16.5;
  double ego_width = 2.55;
  double car_length = 4.8;
  double car_width = 1.8;
  double lead_distance = 50.0;   ///< overtaking: slow leader ahead of the ego (center to center)
  double oncoming_min = 300.0;   ///< overtaking: oncoming placement range ahead of the ego
  double oncoming_max = 1100.0;
  BreakpointSpacing spacing;
  double screen_horizon = 3.0;   ///< unavoidable-collision screen horizon [s]
  double screen_braking = 9.0;   ///< rear-vehicle braking assumed by the screen [m/s^2]
  double screen_min_gap = 2.0;   ///< gap the screen must preserve [m]
  int max_attempts = 1000;

  void validate() const;
};

class ScenarioGenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RoadConfig make_road(ScenarioCase c, const ScenarioOptions& options);

/// True if some same-lane, same-direction pair closes below `min_gap` within
/// `horizon` seconds when the rear vehicle brakes at `braking` from t = 0 and
/// the front one keeps its speed.
bool has_unavoidable_collision(const World& world, double horizon, double braking, double min_gap);

/// Builds the initial world for `seed`. Highway: ego in the middle lane at
/// v_init_ego, cars placed within d_long around it with lane-wise bumper gaps of
/// at least d_delta. Overtaking: a slow leader lead_distance ahead and two
/// oncoming cars in the left lane. Scenarios failing the unavoidable-collision
/// screen are redrawn; throws ScenarioGenerationError after max_attempts.
World generate_scenario(const ScenarioConfig& config, const ScenarioOptions& options,
                        std::uint64_t seed);

}  // namespace lanecraft::sim
