// Copyright 2026 The p2v-safety Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p2v/warning.hpp"

#include <gtest/gtest.h>

#include <random>

namespace p2v::warning
{
namespace
{

PredictionResult predicted(double d_v, double v)
{
  PredictionResult r;
  r.d_vehicle_m = d_v;
  r.ttz_vehicle_s = d_v / v;
  r.ttz_pedestrian_s = d_v / v;
  r.collision_predicted = true;
  return r;
}

PredictionResult with_level(WarningLevel level)
{
  // Built to land on a given raw level with default params at 10 m/s.
  switch (level) {
    case WarningLevel::kNone: return predicted(150.0, 10.0);
    case WarningLevel::kYellow: return predicted(80.0, 10.0);
    case WarningLevel::kOrange: return predicted(50.0, 10.0);
    case WarningLevel::kRed: return predicted(5.0, 10.0);
  }
  return {};
}

TEST(MinDeceleration, Examples)
{
  EXPECT_DOUBLE_EQ(min_deceleration(20.0, 50.0), 4.0);
  EXPECT_DOUBLE_EQ(min_deceleration(0.0, 50.0), 0.0);
  EXPECT_DOUBLE_EQ(min_deceleration(10.0, 5.0), 10.0);
  EXPECT_THROW(min_deceleration(10.0, 0.0), ZeroDistance);
  EXPECT_THROW(min_deceleration(10.0, -1.0), ZeroDistance);
}

TEST(Severity, DistantCollisionIsNone)
{
  const WarningParams params;
  auto r = predicted(150.0, 10.0);
  EXPECT_DOUBLE_EQ(*r.ttz_vehicle_s, 15.0);
  EXPECT_EQ(severity(r, 10.0, params), WarningLevel::kNone);
}

TEST(Severity, YellowBand)
{
  // ttz 8 s, a_min = 100 / 160 = 0.625
  EXPECT_EQ(severity(predicted(80.0, 10.0), 10.0, WarningParams{}), WarningLevel::kYellow);
}

TEST(Severity, OrangeBand)
{
  EXPECT_EQ(severity(predicted(60.0, 10.0), 10.0, WarningParams{}), WarningLevel::kOrange);
  EXPECT_EQ(severity(predicted(50.0, 10.0), 10.0, WarningParams{}), WarningLevel::kOrange);
}

TEST(Severity, RedWhenStoppingNeedsMoreThanFullBrake)
{
  // a_min = 400 / 60 = 6.67 > 6, ttz 1.5 s.
  EXPECT_EQ(severity(predicted(30.0, 20.0), 20.0, WarningParams{}), WarningLevel::kRed);
  // Red ignores the TTZ thresholds entirely.
  WarningParams tiny;
  tiny.yellow_ttz_s = 0.2;
  tiny.orange_ttz_s = 0.1;
  EXPECT_EQ(severity(predicted(30.0, 20.0), 20.0, tiny), WarningLevel::kRed);
  // Exactly at a_brake is not Red.
  EXPECT_NE(severity(predicted(400.0 / 12.0, 20.0), 20.0, WarningParams{}), WarningLevel::kRed);
}

TEST(Severity, NoneWithoutPrediction)
{
  auto r = predicted(5.0, 20.0);
  r.collision_predicted = false;
  EXPECT_EQ(severity(r, 20.0, WarningParams{}), WarningLevel::kNone);
  r = predicted(5.0, 20.0);
  r.ttz_vehicle_s.reset();
  EXPECT_EQ(severity(r, 20.0, WarningParams{}), WarningLevel::kNone);
}

TEST(Severity, NeverRedWhenNotPredicted)
{
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.0, 100.0);
  std::uniform_real_distribution<double> v(0.05, 40.0);
  for (int i = 0; i < 5000; ++i) {
    auto r = predicted(d(rng) + 1e-3, v(rng));
    r.collision_predicted = false;
    EXPECT_EQ(severity(r, v(rng), WarningParams{}), WarningLevel::kNone);
  }
}

TEST(Severity, ReactionMarginShortensBrakingDistance)
{
  WarningParams p;
  p.reaction_margin_s = 1.0;
  // 10 m/s, 25 m: a_min without margin = 2; with 10 m eaten by reaction = 3.33.
  EXPECT_EQ(severity(predicted(25.0, 10.0), 10.0, p), WarningLevel::kOrange);
  p.reaction_margin_s = 2.0;
  // 20 m of reaction travel leaves 5 m: a_min = 10 > 6.
  EXPECT_EQ(severity(predicted(25.0, 10.0), 10.0, p), WarningLevel::kRed);
  p.reaction_margin_s = 3.0;
  EXPECT_EQ(severity(predicted(25.0, 10.0), 10.0, p), WarningLevel::kRed);
}

TEST(Severity, MonotoneEscalationAtConstantSpeed)
{
  const WarningParams params;
  const double v = 14.0;
  WarningLevel previous = WarningLevel::kNone;
  for (double d = 250.0; d > 0.0; d -= v * 0.05) {
    const auto level = severity(predicted(d, v), v, params);
    EXPECT_GE(level, previous) << d;
    previous = level;
  }
  EXPECT_EQ(previous, WarningLevel::kRed);
}

TEST(WarningLevel, TokensAndOrder)
{
  EXPECT_EQ(to_token(WarningLevel::kNone), "none");
  EXPECT_EQ(to_token(WarningLevel::kYellow), "yellow");
  EXPECT_EQ(to_token(WarningLevel::kOrange), "orange");
  EXPECT_EQ(to_token(WarningLevel::kRed), "red");
  EXPECT_EQ(parse_level("orange"), WarningLevel::kOrange);
  EXPECT_FALSE(parse_level("purple").has_value());
  EXPECT_LT(WarningLevel::kNone, WarningLevel::kYellow);
  EXPECT_LT(WarningLevel::kYellow, WarningLevel::kOrange);
  EXPECT_LT(WarningLevel::kOrange, WarningLevel::kRed);
}

TEST(WarningParams, Validation)
{
  EXPECT_TRUE(validate(WarningParams{}).empty());
  WarningParams p;
  p.yellow_ttz_s = 5.0;
  EXPECT_FALSE(validate(p).empty());
  p = {};
  p.a_brake_mps2 = 0.0;
  EXPECT_FALSE(validate(p).empty());
}

TEST(StateMachine, HoldsBeforeDecreasing)
{
  WarningStateMachine m;
  EXPECT_EQ(m.step(with_level(WarningLevel::kYellow), 10.0, 0), WarningLevel::kYellow);
  EXPECT_EQ(m.step(with_level(WarningLevel::kNone), 10.0, 200), WarningLevel::kYellow);
  EXPECT_EQ(m.step(with_level(WarningLevel::kNone), 10.0, 999), WarningLevel::kYellow);
  EXPECT_EQ(m.step(with_level(WarningLevel::kNone), 10.0, 1000), WarningLevel::kNone);
  EXPECT_EQ(m.step(with_level(WarningLevel::kNone), 10.0, 1500), WarningLevel::kNone);
}

TEST(StateMachine, EscalationIsImmediate)
{
  WarningStateMachine m;
  m.step(with_level(WarningLevel::kYellow), 10.0, 0);
  EXPECT_EQ(m.step(with_level(WarningLevel::kRed), 10.0, 50), WarningLevel::kRed);
}

TEST(StateMachine, DropsToCurrentRawAfterHold)
{
  WarningStateMachine m;
  m.step(with_level(WarningLevel::kOrange), 10.0, 0);
  EXPECT_EQ(m.step(with_level(WarningLevel::kYellow), 10.0, 500), WarningLevel::kOrange);
  EXPECT_EQ(m.step(with_level(WarningLevel::kYellow), 10.0, 1000), WarningLevel::kYellow);
}

TEST(StateMachine, StaleDataDecaysToNone)
{
  WarningParams p;
  WarningStateMachine m(p);
  EXPECT_EQ(m.step(with_level(WarningLevel::kOrange), 10.0, 0), WarningLevel::kOrange);
  // Within staleness the last assessment stands.
  EXPECT_EQ(m.step(std::nullopt, 10.0, 1500), WarningLevel::kOrange);
  EXPECT_EQ(m.step(std::nullopt, 10.0, 2000), WarningLevel::kOrange);
  // Past staleness the raw level is None and the hold runs out.
  EXPECT_EQ(m.step(std::nullopt, 10.0, 2050), WarningLevel::kOrange);
  EXPECT_EQ(m.step(std::nullopt, 10.0, 3000), WarningLevel::kNone);
}

TEST(StateMachine, NoDataEverIsNone)
{
  WarningStateMachine m;
  for (std::int64_t t = 0; t < 5000; t += 50) {
    EXPECT_EQ(m.step(std::nullopt, 10.0, t), WarningLevel::kNone);
  }
}

TEST(StateMachine, ClockRegression)
{
  WarningStateMachine m;
  m.step(std::nullopt, 0.0, 100);
  EXPECT_NO_THROW(m.step(std::nullopt, 0.0, 100));
  EXPECT_THROW(m.step(std::nullopt, 0.0, 99), ClockRegression);
}

TEST(StateMachine, NeverDecreasesWithinHoldOfLastIncrease)
{
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> level(0, 3);
  std::uniform_int_distribution<int> gap(1, 400);
  for (int run = 0; run < 200; ++run) {
    WarningStateMachine m;
    std::int64_t now = 0;
    std::int64_t last_increase = 0;
    WarningLevel previous = WarningLevel::kNone;
    for (int i = 0; i < 200; ++i) {
      now += gap(rng);
      const auto out = m.step(with_level(static_cast<WarningLevel>(level(rng))), 10.0, now);
      if (out > previous) last_increase = now;
      if (out < previous) {
        ASSERT_GE(now - last_increase, m.params().hold_ms) << run << " " << i;
      }
      previous = out;
    }
  }
}

}  // namespace
}  // namespace p2v::warning
