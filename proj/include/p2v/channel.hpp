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

#ifndef P2V__CHANNEL_HPP_
#define P2V__CHANNEL_HPP_

#include "p2v/geo.hpp"
#include "p2v/psm_codec.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace p2v::channel
{

using geo::LocalPoint;

struct ChannelParams
{
  double los_range_m{300.0};
  double nlos_range_m{120.0};
  double floor_prob{0.05};
  std::int64_t adv_interval_ms{100};
  std::uint64_t seed{1};
};

inline std::vector<std::string> validate(const ChannelParams & p)
{
  std::vector<std::string> out;
  if (!(p.los_range_m > 0.0)) out.emplace_back("channel.los_range_m must be > 0");
  if (!(p.nlos_range_m >= 0.0 && p.nlos_range_m <= p.los_range_m)) {
    out.emplace_back("channel.nlos_range_m must be in [0, los_range_m]");
  }
  if (!(p.floor_prob >= 0.0 && p.floor_prob < 1.0)) {
    out.emplace_back("channel.floor_prob must be in [0, 1)");
  }
  if (p.adv_interval_ms <= 0) out.emplace_back("channel.adv_interval_ms must be > 0");
  return out;
}

/// Simple polygon, counterclockwise.
struct Obstruction
{
  std::vector<LocalPoint> polygon;
};

namespace detail
{

inline int orientation(const LocalPoint & a, const LocalPoint & b, const LocalPoint & c)
{
  const double v = geo::cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

inline bool on_segment(const LocalPoint & a, const LocalPoint & b, const LocalPoint & p)
{
  return std::min(a.east_m, b.east_m) <= p.east_m && p.east_m <= std::max(a.east_m, b.east_m) &&
         std::min(a.north_m, b.north_m) <= p.north_m && p.north_m <= std::max(a.north_m, b.north_m);
}

// Closed segments; touching counts.
inline bool segments_intersect(
  const LocalPoint & p1, const LocalPoint & p2, const LocalPoint & q1, const LocalPoint & q2)
{
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

inline double signed_area(std::span<const LocalPoint> poly)
{
  double area = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    area += geo::cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return area / 2.0;
}

}  // namespace detail

inline bool contains(const Obstruction & obs, const LocalPoint & p)
{
  const auto & poly = obs.polygon;
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const auto & a = poly[i];
    const auto & b = poly[j];
    if ((a.north_m > p.north_m) != (b.north_m > p.north_m)) {
      const double x =
        a.east_m + (p.north_m - a.north_m) * (b.east_m - a.east_m) / (b.north_m - a.north_m);
      if (p.east_m < x) {
        inside = !inside;
      }
    }
  }
  return inside;
}

inline std::vector<std::string> validate(const Obstruction & obs)
{
  std::vector<std::string> out;
  const auto & poly = obs.polygon;
  const std::size_t n = poly.size();
  if (n < 3) {
    out.emplace_back("obstruction needs at least 3 vertices");
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (detail::segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
        out.emplace_back("obstruction polygon self-intersects");
        return out;
      }
    }
  }
  if (!(detail::signed_area(poly) > 0.0)) {
    out.emplace_back("obstruction polygon must be counterclockwise with nonzero area");
  }
  return out;
}

/// True iff the segment tx-rx touches no obstruction boundary or interior.
/// An endpoint inside an obstruction counts as blocked.
inline bool is_los(const LocalPoint & tx, const LocalPoint & rx, std::span<const Obstruction> obstructions)
{
  for (const auto & obs : obstructions) {
    if (contains(obs, tx) || contains(obs, rx)) {
      return false;
    }
    const auto & poly = obs.polygon;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (detail::segments_intersect(tx, rx, poly[i], poly[(i + 1) % poly.size()])) {
        return false;
      }
    }
  }
  return true;
}

/// (1 - floor) * max(0, 1 - d/R)^2 with R the LOS or NLOS range.
inline double receive_probability(double distance_m, bool los, const ChannelParams & params)
{
  const double range = los ? params.los_range_m : params.nlos_range_m;
  if (!(range > 0.0)) {
    return 0.0;
  }
  const double falloff = std::max(0.0, 1.0 - distance_m / range);
  return (1.0 - params.floor_prob) * falloff * falloff;
}

/// Per-tick generator: one independent stream per (seed, tick).
inline std::mt19937_64 link_rng(std::uint64_t seed, std::uint64_t tick_index)
{
  std::seed_seq seq{
    static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
    static_cast<std::uint32_t>(tick_index), static_cast<std::uint32_t>(tick_index >> 32)};
  return std::mt19937_64(seq);
}

/// Bernoulli draw; p >= 1 always succeeds, p <= 0 never does.
inline bool bernoulli(double p, std::mt19937_64 & rng)
{
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

/// Erasure channel: the frame arrives bit-identical or not at all.
inline std::optional<psm::WireFrame> transmit(
  const psm::WireFrame & frame, const LocalPoint & tx, const LocalPoint & rx,
  std::span<const Obstruction> obstructions, const ChannelParams & params, std::uint64_t tick_index)
{
  const bool los = is_los(tx, rx, obstructions);
  const double p = receive_probability(geo::norm(rx - tx), los, params);
  auto rng = link_rng(params.seed, tick_index);
  if (bernoulli(p, rng)) {
    return frame;
  }
  return std::nullopt;
}

}  // namespace p2v::channel

#endif  // P2V__CHANNEL_HPP_
