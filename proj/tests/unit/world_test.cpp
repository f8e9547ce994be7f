#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lanecraft/sim/world.hpp"
#include "test_support.hpp"

using namespace lanecraft;
using namespace lanecraft::sim;
using lanecraft::fixtures::add_car;
using lanecraft::fixtures::constant_profile;
using lanecraft::fixtures::empty_world;

namespace {
const WorldParams kParams{};

RoadConfig highway() { return RoadConfig::highway(3.5, 800); }

// Two cars in lane 0 with the given bumper gap.
World pair_with_gap(double gap) {
  World w = empty_world(highway(), 2, 20);
  add_car(w, 0, 0, 20);
  add_car(w, 4.8 + gap, 0, 20);
  return w;
}
}  // namespace

TEST(Road, Geometry) {
  const auto r = highway();
  EXPECT_EQ(r.lane_count, 3);
  EXPECT_DOUBLE_EQ(r.centerline(2), 7.0);
  EXPECT_EQ(r.nearest_lane(3.4), 1);
  EXPECT_EQ(r.nearest_lane(-9), 0);
  EXPECT_EQ(r.nearest_lane(99), 2);
  EXPECT_EQ(r.lanes_overlapping(-0.9, 0.9), 1u);
  EXPECT_EQ(r.lanes_overlapping(1.0, 2.5), 3u);
  const auto o = RoadConfig::overtaking(3.5, 800);
  EXPECT_EQ(o.lane_count, 2);
  EXPECT_FALSE(o.is_oncoming(0));
  EXPECT_TRUE(o.is_oncoming(1));
  EXPECT_FALSE(r.is_oncoming(0) || r.is_oncoming(1) || r.is_oncoming(2));
}

TEST(Kinematics, ConstantSpeedAdvancesExactly) {
  World w = empty_world(highway(), 1, 23.5);
  const auto res = step_world(w, EgoCommand::acceleration(0), 1, 1.0, kParams);
  EXPECT_DOUBLE_EQ(res.world.ego().x, 23.5);
  EXPECT_DOUBLE_EQ(res.world.ego().speed, 23.5);
  EXPECT_DOUBLE_EQ(res.world.time_s, 1.0);
}

TEST(Kinematics, ClampsEgoSpeed) {
  auto up = integrate_longitudinal(24, 2, 1, 25);
  EXPECT_DOUBLE_EQ(up.speed, 25);
  EXPECT_DOUBLE_EQ(up.displacement, 24 * 0.5 + 0.5 * 2 * 0.25 + 25 * 0.5);
  auto down = integrate_longitudinal(3, -9, 1, 25);
  EXPECT_DOUBLE_EQ(down.speed, 0);
  EXPECT_DOUBLE_EQ(down.displacement, 9.0 / 18.0);
  auto plain = integrate_longitudinal(10, -2, 0.5, 25);
  EXPECT_DOUBLE_EQ(plain.speed, 9);
  EXPECT_DOUBLE_EQ(plain.displacement, 10 * 0.5 - 0.25);
}

TEST(KinematicsProperty, DisplacementMatchesAverageSpeed) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> speed(0, 25), accel(-9, 3), dt(0.01, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double v = speed(rng), a = accel(rng), h = dt(rng);
    const auto u = integrate_longitudinal(v, a, h, 25);
    EXPECT_GE(u.speed, 0);
    EXPECT_LE(u.speed, 25);
    EXPECT_LE(std::abs(u.displacement - 0.5 * (v + u.speed) * h), 0.5 * std::abs(a) * h * h + 1e-12);
  }
}

TEST(Contact, NearCollisionBoundary) {
  EXPECT_EQ(detect_ego_events(pair_with_gap(4.7), kParams).kind, CollisionKind::kNone);  // ego not involved
  EXPECT_EQ(classify_pair(pair_with_gap(4.7).vehicles[1], pair_with_gap(4.7).vehicles[2], highway(), 4.8),
            CollisionKind::kNearCollision);
  EXPECT_EQ(classify_pair(pair_with_gap(4.8).vehicles[1], pair_with_gap(4.8).vehicles[2], highway(), 4.8),
            CollisionKind::kNone);
  const auto almost = pair_with_gap(std::nextafter(4.8, 0.0));
  EXPECT_EQ(classify_pair(almost.vehicles[1], almost.vehicles[2], highway(), 4.8),
            CollisionKind::kNearCollision);
  EXPECT_EQ(classify_pair(pair_with_gap(4.9).vehicles[1], pair_with_gap(4.9).vehicles[2], highway(), 4.8),
            CollisionKind::kNone);
}

TEST(Contact, EgoNearCollisionReport) {
  World w = empty_world(highway(), 1, 20);
  add_car(w, 8.25 + 4.7 + 2.4, 1, 20);
  auto r = detect_ego_events(w, kParams);
  EXPECT_EQ(r.kind, CollisionKind::kNearCollision);
  EXPECT_EQ(r.other_vehicle_id, 1);
  EXPECT_NEAR(r.gap, 4.7, 1e-12);
  w.vehicles[1].x = 8.25 + 4.9 + 2.4;
  r = detect_ego_events(w, kParams);
  EXPECT_EQ(r.kind, CollisionKind::kNone);
  EXPECT_NEAR(r.gap, 4.9, 1e-12);
}

TEST(Contact, AdjacentLaneIsNotNearCollision) {
  World w = empty_world(highway(), 1, 20);
  add_car(w, 0, 2, 20);
  EXPECT_EQ(detect_ego_events(w, kParams).kind, CollisionKind::kNone);
}

TEST(Contact, OverlapIsCollisionAndOutranksNear) {
  World w = empty_world(highway(), 1, 20);
  add_car(w, 8.25 + 3, 1, 20);  // near
  add_car(w, -9, 1, 20);        // overlapping rear
  const auto r = detect_ego_events(w, kParams);
  EXPECT_EQ(r.kind, CollisionKind::kCollision);
  EXPECT_EQ(r.other_vehicle_id, 2);
}

TEST(ContactProperty, ClassificationIsSymmetric) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> x(-20, 20), y(-1, 8);
  const auto road = highway();
  for (int i = 0; i < 5000; ++i) {
    Vehicle a, b;
    a.x = x(rng);
    a.y = y(rng);
    b.x = x(rng);
    b.y = y(rng);
    a.length = 16.5;
    a.width = 2.55;
    EXPECT_EQ(classify_pair(a, b, road, 4.8), classify_pair(b, a, road, 4.8));
  }
}

TEST(StepWorld, OffRoadTargetReturnsUnchangedWorld) {
  World w = empty_world(highway(), 2, 20);
  const auto res = step_world(w, EgoCommand::acceleration(0), 3, 0.1, kParams);
  EXPECT_EQ(res.report.kind, CollisionKind::kOffRoad);
  EXPECT_DOUBLE_EQ(res.world.ego().x, 0);
  EXPECT_THROW(step_world(w, EgoCommand::acceleration(0), 2, 0.0, kParams), std::invalid_argument);
}

TEST(StepWorld, LaneChangeTakesTwoToThreeSeconds) {
  World w = empty_world(highway(), 1, 25);
  double t = 0;
  double last_error = 3.5;
  double settled = -1;
  while (t < 10) {
    w = step_world(w, EgoCommand::acceleration(0), 2, 0.1, kParams).world;
    t += 0.1;
    const double error = std::abs(w.ego().y - 7.0);
    if (settled < 0 && error <= kParams.lateral.settle_tolerance) settled = t;
    if (settled < 0) {
      EXPECT_LT(error, last_error + 1e-12);
    }
    last_error = error;
  }
  EXPECT_GE(settled, 2.0);
  EXPECT_LE(settled, 3.0);
  EXPECT_EQ(w.ego().current_lane, 2);
  EXPECT_LT(std::abs(w.ego().y - 7.0), 0.05);
}

TEST(StepWorld, OtherVehiclesKeepLanesAndFollowIdm) {
  World w = empty_world(highway(), 1, 25);
  add_car(w, 60, 0, 15, 1, 30);
  add_car(w, 100, 0, 15, 1, 15);
  for (int k = 0; k < 300; ++k) {
    w = step_world(w, EgoCommand::idm(), 1, 0.1, kParams).world;
    EXPECT_EQ(w.vehicles[1].current_lane, 0);
    EXPECT_EQ(w.vehicles[2].current_lane, 0);
    EXPECT_DOUBLE_EQ(w.vehicles[1].y, 0.0);
    EXPECT_GE(w.ego().speed, 0);
    EXPECT_LE(w.ego().speed, 25);
  }
  EXPECT_GT(bumper_gap(w.vehicles[1], w.vehicles[2]), 2.0);
  EXPECT_LT(w.vehicles[1].speed, 16);
}

TEST(StepWorld, IdmCommandClampsAtMaxBraking) {
  World w = empty_world(highway(), 1, 25);
  add_car(w, 8.25 + 1.0 + 2.4, 1, 0);
  EXPECT_DOUBLE_EQ(idm_command(w, 0, 25, kParams), -9.0);
  w.vehicles[1].x = 5;  // overlap
  EXPECT_DOUBLE_EQ(idm_command(w, 0, 25, kParams), -9.0);
}

TEST(StepWorld, LeaderIncludesOncomingTraffic) {
  World w = empty_world(RoadConfig::overtaking(3.5, 800), 0, 20);
  add_car(w, 200, 0, 20, -1);
  const auto leader = find_leader(w, 0);
  ASSERT_TRUE(leader.has_value());
  EXPECT_EQ(*leader, 1u);
  const auto back = find_leader(w, 1);
  ASSERT_TRUE(back.has_value());
  EXPECT_EQ(*back, 0u);
}

TEST(StepWorld, Deterministic) {
  World w = empty_world(highway(), 1, 25);
  add_car(w, 40, 1, 18);
  add_car(w, -30, 2, 30);
  World a = w, b = w;
  for (int k = 0; k < 100; ++k) {
    a = step_world(a, EgoCommand::idm(), 2, 0.1, kParams).world;
    b = step_world(b, EgoCommand::idm(), 2, 0.1, kParams).world;
  }
  for (std::size_t i = 0; i < a.vehicles.size(); ++i) {
    EXPECT_EQ(a.vehicles[i].x, b.vehicles[i].x);
    EXPECT_EQ(a.vehicles[i].y, b.vehicles[i].y);
    EXPECT_EQ(a.vehicles[i].speed, b.vehicles[i].speed);
  }
}
