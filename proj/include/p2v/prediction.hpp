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

#ifndef P2V__PREDICTION_HPP_
#define P2V__PREDICTION_HPP_

#include "p2v/geo.hpp"

#include <optional>
#include <stdexcept>

namespace p2v::prediction
{

using geo::AgentState;
using geo::CollisionZone;

/// Below this speed an agent is treated as stationary and never arrives.
inline constexpr double kStationarySpeedMps = 0.05;
inline constexpr double kDefaultSafetyMarginS = 4.0;

class NegativeInput : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Time to zone, d / v. nullopt ("never") for a stationary agent.
inline std::optional<double> ttz(double distance_m, double speed_mps)
{
  if (distance_m < 0.0 || speed_mps < 0.0) {
    throw NegativeInput("NegativeInput: distance and speed must be >= 0");
  }
  if (speed_mps < kStationarySpeedMps) {
    return std::nullopt;
  }
  return distance_m / speed_mps;
}

/// Strict co-arrival window: ttz_p - t_s < ttz_v < ttz_p + t_s.
inline bool collision_window(double ttz_vehicle_s, double ttz_pedestrian_s, double t_s)
{
  return ttz_pedestrian_s - t_s < ttz_vehicle_s && ttz_vehicle_s < ttz_pedestrian_s + t_s;
}

struct PredictionResult
{
  std::optional<double> ttz_vehicle_s;
  std::optional<double> ttz_pedestrian_s;
  std::optional<double> d_vehicle_m;
  bool collision_predicted{false};
};

inline PredictionResult assess(
  const AgentState & vehicle, const AgentState & pedestrian, const CollisionZone & zone, double t_s)
{
  if (!(t_s > 0.0)) {
    throw std::invalid_argument("time safety margin must be > 0");
  }
  PredictionResult result;
  result.d_vehicle_m = geo::distance_to_zone(vehicle, zone);
  const auto d_pedestrian = geo::distance_to_zone(pedestrian, zone);
  if (result.d_vehicle_m) {
    result.ttz_vehicle_s = ttz(*result.d_vehicle_m, vehicle.speed_mps);
  }
  if (d_pedestrian) {
    result.ttz_pedestrian_s = ttz(*d_pedestrian, pedestrian.speed_mps);
  }
  result.collision_predicted =
    result.ttz_vehicle_s && result.ttz_pedestrian_s &&
    collision_window(*result.ttz_vehicle_s, *result.ttz_pedestrian_s, t_s);
  return result;
}

}  // namespace p2v::prediction

#endif  // P2V__PREDICTION_HPP_
