#include "lanecraft/sim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>

namespace lanecraft::sim {

namespace {

constexpr int kPlacementTries = 200;

std::shared_ptr<const SpeedTrajectory> make_profile(SpeedRange range,
                                                    const ScenarioConfig& config,
                                                    const ScenarioOptions& options, Rng& rng) {
  // Wide enough for every vehicle over a long episode; the end values hold beyond.
  const double from = -(options.d_max + config.d_long);
  const double to = 2.0 * options.d_max + std::max(options.oncoming_max, config.d_long);
  return std::make_shared<const SpeedTrajectory>(
      generate_speed_trajectory(range, from, to, rng, options.spacing));
}

Vehicle make_ego(const ScenarioConfig& config, const ScenarioOptions& options,
                 const RoadConfig& road, int lane) {
  Vehicle ego;
  ego.id = 0;
  ego.x = 0.0;
  ego.y = road.centerline(lane);
  ego.speed = config.v_init_ego;
  ego.length = options.ego_length;
  ego.width = options.ego_width;
  ego.current_lane = lane;
  ego.target_lane = lane;
  return ego;
}

Vehicle make_car(int id, double x, int lane, int direction,
                 std::shared_ptr<const SpeedTrajectory> profile, const ScenarioOptions& options,
                 const RoadConfig& road) {
  Vehicle car;
  car.id = id;
  car.x = x;
  car.y = road.centerline(lane);
  car.length = options.car_length;
  car.width = options.car_width;
  car.current_lane = lane;
  car.target_lane = lane;
  car.direction = direction;
  car.speed = profile->desired_speed(x);
  car.profile = std::move(profile);
  return car;
}

bool placement_ok(const std::vector<Vehicle>& placed, const Vehicle& candidate, double d_delta) {
  return std::all_of(placed.begin(), placed.end(), [&](const Vehicle& v) {
    return v.current_lane != candidate.current_lane || bumper_gap(v, candidate) >= d_delta;
  });
}

std::optional<World> try_highway(const ScenarioConfig& config, const ScenarioOptions& options,
                                 Rng& rng) {
  World world;
  world.road = make_road(ScenarioCase::kHighway, options);
  const int ego_lane = world.road.lane_count / 2;
  world.vehicles.push_back(make_ego(config, options, world.road, ego_lane));

  const SpeedRange slow{config.v_plus_min, config.v_plus_max};
  const SpeedRange fast{config.v_minus_min, config.v_minus_max};
  for (int id = 1; id <= config.surrounding_vehicle_count; ++id) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementTries && !placed; ++attempt) {
      const int lane = uniform_index(rng, world.road.lane_count);
      const double x = uniform(rng, -0.5 * config.d_long, 0.5 * config.d_long);
      Vehicle probe;
      probe.x = x;
      probe.length = options.car_length;
      probe.current_lane = lane;
      if (!placement_ok(world.vehicles, probe, config.d_delta)) continue;
      auto profile = make_profile(x >= 0 ? slow : fast, config, options, rng);
      world.vehicles.push_back(make_car(id, x, lane, 1, std::move(profile), options, world.road));
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return world;
}

std::optional<World> try_overtaking(const ScenarioConfig& config, const ScenarioOptions& options,
                                    Rng& rng) {
  World world;
  world.road = make_road(ScenarioCase::kOvertaking, options);
  world.vehicles.push_back(make_ego(config, options, world.road, 0));

  const SpeedRange slow{config.v_plus_min, config.v_plus_max};
  world.vehicles.push_back(make_car(1, options.lead_distance, 0, 1,
                                    make_profile(slow, config, options, rng), options, world.road));
  const int oncoming_lane = 1;
  for (int id = 2; id <= 3; ++id) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementTries && !placed; ++attempt) {
      const double x = uniform(rng, options.oncoming_min, options.oncoming_max);
      Vehicle probe;
      probe.x = x;
      probe.length = options.car_length;
      probe.current_lane = oncoming_lane;
      if (!placement_ok(world.vehicles, probe, config.d_delta)) continue;
      world.vehicles.push_back(make_car(id, x, oncoming_lane, -1,
                                        make_profile(slow, config, options, rng), options,
                                        world.road));
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return world;
}

}  // namespace

const char* to_string(ScenarioCase c) {
  return c == ScenarioCase::kHighway ? "highway" : "overtaking";
}

ScenarioCase scenario_case_from_string(const std::string& name) {
  if (name == "highway") return ScenarioCase::kHighway;
  if (name == "overtaking") return ScenarioCase::kOvertaking;
  throw std::invalid_argument("unknown scenario case '" + name + "'");
}

void ScenarioConfig::validate() const {
  if (!(d_long > 0)) throw std::invalid_argument("d_long must be positive");
  if (!(d_delta >= 0)) throw std::invalid_argument("d_delta must be >= 0");
  if (!(v_plus_min > 0) || v_plus_min > v_plus_max) {
    throw std::invalid_argument("front speed range must satisfy 0 < v_plus_min <= v_plus_max");
  }
  if (!(v_minus_min > 0) || v_minus_min > v_minus_max) {
    throw std::invalid_argument("rear speed range must satisfy 0 < v_minus_min <= v_minus_max");
  }
  if (!(v_max_ego > 0)) throw std::invalid_argument("v_max_ego must be positive");
  if (v_init_ego < 0 || v_init_ego > v_max_ego) {
    throw std::invalid_argument("v_init_ego must lie in [0, v_max_ego]");
  }
  if (surrounding_vehicle_count < 0) {
    throw std::invalid_argument("surrounding_vehicle_count must be >= 0");
  }
  if (scenario_case == ScenarioCase::kHighway &&
      !(v_plus_max < v_init_ego && v_init_ego < v_minus_min)) {
    throw std::invalid_argument("highway case requires v_plus_max < v_init_ego < v_minus_min");
  }
}

void ScenarioOptions::validate() const {
  if (!(lane_width > 0) || !(d_max > 0)) throw std::invalid_argument("invalid road geometry");
  if (!(ego_length > 0) || !(car_length > 0) || !(ego_width > 0) || !(car_width > 0)) {
    throw std::invalid_argument("vehicle dimensions must be positive");
  }
  if (!(oncoming_min <= oncoming_max)) throw std::invalid_argument("oncoming range inverted");
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

RoadConfig make_road(ScenarioCase c, const ScenarioOptions& options) {
  return c == ScenarioCase::kHighway ? RoadConfig::highway(options.lane_width, options.d_max)
                                     : RoadConfig::overtaking(options.lane_width, options.d_max);
}

bool has_unavoidable_collision(const World& world, double horizon, double braking, double min_gap) {
  const auto& vs = world.vehicles;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const Vehicle& a = vs[i];
      const Vehicle& b = vs[j];
      if (a.direction != b.direction) continue;
      if ((lane_occupancy(a, world.road) & lane_occupancy(b, world.road)) == 0) continue;
      const bool a_ahead = a.direction * (a.x - b.x) > 0;
      const Vehicle& front = a_ahead ? a : b;
      const Vehicle& rear = a_ahead ? b : a;
      const double gap0 = bumper_gap(a, b);
      const double dv = rear.speed - front.speed;
      double closing = 0.0;
      if (dv > 0) {
        const double t = std::min(horizon, dv / braking);
        closing = dv * t - 0.5 * braking * t * t;
      }
      if (gap0 - closing < min_gap) return true;
    }
  }
  return false;
}

World generate_scenario(const ScenarioConfig& config, const ScenarioOptions& options,
                        std::uint64_t seed) {
  config.validate();
  options.validate();
  Rng rng(seed);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    auto world = config.scenario_case == ScenarioCase::kHighway
                     ? try_highway(config, options, rng)
                     : try_overtaking(config, options, rng);
    if (!world) continue;
    if (has_unavoidable_collision(*world, options.screen_horizon, options.screen_braking,
                                  options.screen_min_gap)) {
      continue;
    }
    return *std::move(world);
  }
  throw ScenarioGenerationError("could not generate a " + std::string(to_string(config.scenario_case)) +
                                " scenario within " + std::to_string(options.max_attempts) +
                                " attempts");
}

}  // namespace lanecraft::sim
