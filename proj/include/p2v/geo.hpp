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

#ifndef P2V__GEO_HPP_
#define P2V__GEO_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace p2v::geo
{

inline constexpr double kMetersPerDegree = 111320.0;
inline constexpr double kMaxProjectionRangeM = 10000.0;

struct GeoPoint
{
  double lat_deg{0.0};
  double lon_deg{0.0};
};

/// East-North-Up tangent plane coordinates, meters.
struct LocalPoint
{
  double east_m{0.0};
  double north_m{0.0};

  LocalPoint operator+(const LocalPoint & o) const { return {east_m + o.east_m, north_m + o.north_m}; }
  LocalPoint operator-(const LocalPoint & o) const { return {east_m - o.east_m, north_m - o.north_m}; }
  LocalPoint operator*(double s) const { return {east_m * s, north_m * s}; }
  bool operator==(const LocalPoint &) const = default;
};

inline double dot(const LocalPoint & a, const LocalPoint & b)
{
  return a.east_m * b.east_m + a.north_m * b.north_m;
}

inline double cross(const LocalPoint & a, const LocalPoint & b)
{
  return a.east_m * b.north_m - a.north_m * b.east_m;
}

inline double norm(const LocalPoint & p) { return std::hypot(p.east_m, p.north_m); }

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Unit vector for a compass heading (degrees clockwise from north).
inline LocalPoint heading_unit(double heading_deg)
{
  const double rad = deg_to_rad(heading_deg);
  return {std::sin(rad), std::cos(rad)};
}

/// Wraps any angle into [0, 360).
inline double normalize_heading(double heading_deg)
{
  double h = std::fmod(heading_deg, 360.0);
  if (h < 0.0) {
    h += 360.0;
  }
  return h >= 360.0 ? 0.0 : h;
}

/// Oriented rectangle at the crosswalk. half_length_m runs along the vehicle
/// travel axis, whose compass direction is axis_heading_deg.
struct CollisionZone
{
  LocalPoint center;
  double half_length_m{0.0};
  double half_width_m{0.0};
  double axis_heading_deg{0.0};
};

inline bool is_valid(const CollisionZone & zone)
{
  return zone.half_length_m > 0.0 && zone.half_width_m > 0.0 && zone.axis_heading_deg >= 0.0 &&
         zone.axis_heading_deg < 360.0;
}

/// Timestamped kinematic state of either agent.
struct AgentState
{
  LocalPoint position;
  double speed_mps{0.0};
  double heading_deg{0.0};
  std::int64_t timestamp_ms{0};
};

class OutOfRange : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// Equirectangular projection onto the tangent plane at origin. Valid up to
/// 10 km of separation.
inline LocalPoint to_local(const GeoPoint & origin, const GeoPoint & p)
{
  const LocalPoint q{
    (p.lon_deg - origin.lon_deg) * std::cos(deg_to_rad(origin.lat_deg)) * kMetersPerDegree,
    (p.lat_deg - origin.lat_deg) * kMetersPerDegree};
  if (!(norm(q) <= kMaxProjectionRangeM)) {
    throw OutOfRange("OutOfRange: point more than 10 km from origin");
  }
  return q;
}

inline GeoPoint from_local(const GeoPoint & origin, const LocalPoint & q)
{
  if (!(norm(q) <= kMaxProjectionRangeM)) {
    throw OutOfRange("OutOfRange: offset longer than 10 km");
  }
  const double cos_lat = std::cos(deg_to_rad(origin.lat_deg));
  if (cos_lat <= 1e-12) {
    throw OutOfRange("OutOfRange: origin at a pole");
  }
  return {
    origin.lat_deg + q.north_m / kMetersPerDegree,
    origin.lon_deg + q.east_m / (cos_lat * kMetersPerDegree)};
}

/// Distance along the agent's heading ray to the zone boundary: 0 when the
/// agent is inside, nullopt when the ray misses. Grazing a corner counts as
/// a hit.
inline std::optional<double> distance_to_zone(const AgentState & state, const CollisionZone & zone)
{
  // Work in the zone frame: axis u along travel, w across it.
  const LocalPoint u = heading_unit(zone.axis_heading_deg);
  const LocalPoint w{u.north_m, -u.east_m};
  const LocalPoint rel = state.position - zone.center;
  const LocalPoint dir = heading_unit(state.heading_deg);

  const double pos[2] = {dot(rel, u), dot(rel, w)};
  const double vel[2] = {dot(dir, u), dot(dir, w)};
  const double half[2] = {zone.half_length_m, zone.half_width_m};

  if (std::abs(pos[0]) <= half[0] && std::abs(pos[1]) <= half[1]) {
    return 0.0;
  }

  // Slab test; an axis with (numerically) no motion must already be inside
  // its slab. The nanometre slack keeps rays that run along an edge or touch
  // a corner a hit despite rounding in the frame change.
  constexpr double kParallel = 1e-12;
  constexpr double kEdgeSlack = 1e-9;
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    if (std::abs(vel[axis]) < kParallel) {
      if (std::abs(pos[axis]) > half[axis] + kEdgeSlack) {
        return std::nullopt;
      }
      continue;
    }
    double t0 = (-half[axis] - pos[axis]) / vel[axis];
    double t1 = (half[axis] - pos[axis]) / vel[axis];
    if (t0 > t1) {
      std::swap(t0, t1);
    }
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
  }
  if (t_enter > t_exit + kEdgeSlack || t_exit < 0.0) {
    return std::nullopt;
  }
  return std::max(t_enter, 0.0);
}

}  // namespace p2v::geo

#endif  // P2V__GEO_HPP_
