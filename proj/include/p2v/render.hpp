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

#ifndef P2V__RENDER_HPP_
#define P2V__RENDER_HPP_

#include "p2v/channel.hpp"
#include "p2v/geo.hpp"
#include "p2v/scenario_io.hpp"
#include "p2v/warning.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace p2v::render
{

using warning::WarningLevel;

struct RenderStyle
{
  std::string pedestrian{"#87cefa"};  // light blue
  std::string vehicle_none{"#00008b"};  // dark blue
  std::string yellow{"#ffd700"};
  std::string orange{"#ff8c00"};
  std::string red{"#ff0000"};
  std::string obstruction{"#808080"};

  const std::string & vehicle(WarningLevel level) const
  {
    switch (level) {
      case WarningLevel::kYellow: return yellow;
      case WarningLevel::kOrange: return orange;
      case WarningLevel::kRed: return red;
      case WarningLevel::kNone: break;
    }
    return vehicle_none;
  }
};

namespace detail
{

inline std::string fmt2(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

/// Top-down SVG: gray obstructions, one circle per agent per tick, vehicle
/// colored by the displayed warning. Output depends only on the inputs.
inline std::string render_svg(
  std::span<const io::TraceRow> rows, std::span<const channel::Obstruction> obstructions,
  const RenderStyle & style = {})
{
  constexpr double kMargin = 5.0;
  constexpr double kPxPerM = 6.0;
  constexpr double kRadius = 4.0;

  double min_e = std::numeric_limits<double>::infinity();
  double min_n = min_e;
  double max_e = -min_e;
  double max_n = -min_e;
  auto grow = [&](const geo::LocalPoint & p) {
    min_e = std::min(min_e, p.east_m);
    max_e = std::max(max_e, p.east_m);
    min_n = std::min(min_n, p.north_m);
    max_n = std::max(max_n, p.north_m);
  };
  for (const auto & r : rows) {
    grow(r.vehicle);
    grow(r.pedestrian);
  }
  for (const auto & obs : obstructions) {
    for (const auto & v : obs.polygon) grow(v);
  }
  if (rows.empty() && obstructions.empty()) {
    min_e = min_n = 0.0;
    max_e = max_n = 1.0;
  }
  min_e -= kMargin;
  min_n -= kMargin;
  max_e += kMargin;
  max_n += kMargin;

  // North up.
  auto x = [&](const geo::LocalPoint & p) { return detail::fmt2((p.east_m - min_e) * kPxPerM); };
  auto y = [&](const geo::LocalPoint & p) { return detail::fmt2((max_n - p.north_m) * kPxPerM); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt2((max_e - min_e) * kPxPerM) +
         "\" height=\"" + detail::fmt2((max_n - min_n) * kPxPerM) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const auto & obs : obstructions) {
    out += "<polygon fill=\"" + style.obstruction + "\" points=\"";
    for (std::size_t i = 0; i < obs.polygon.size(); ++i) {
      if (i) out += ' ';
      out += x(obs.polygon[i]) + "," + y(obs.polygon[i]);
    }
    out += "\"/>\n";
  }
  const std::string r = detail::fmt2(kRadius);
  for (const auto & row : rows) {
    out += "<circle cx=\"" + x(row.pedestrian) + "\" cy=\"" + y(row.pedestrian) + "\" r=\"" + r +
           "\" fill=\"" + style.pedestrian + "\"/>\n";
  }
  for (const auto & row : rows) {
    out += "<circle cx=\"" + x(row.vehicle) + "\" cy=\"" + y(row.vehicle) + "\" r=\"" + r +
           "\" fill=\"" + style.vehicle(row.warning) + "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

/// GeoJSON FeatureCollection: obstruction polygons first, then a vehicle and a
/// pedestrian point per tick, mapped back to WGS-84 through origin.
inline nlohmann::json render_geojson(
  std::span<const io::TraceRow> rows, std::span<const channel::Obstruction> obstructions,
  const geo::GeoPoint & origin, const RenderStyle & style = {})
{
  using nlohmann::json;
  auto lonlat = [&origin](const geo::LocalPoint & p) {
    const auto g = geo::from_local(origin, p);
    return json::array({g.lon_deg, g.lat_deg});
  };
  json features = json::array();
  for (const auto & obs : obstructions) {
    json ring = json::array();
    for (const auto & v : obs.polygon) ring.push_back(lonlat(v));
    if (!obs.polygon.empty()) ring.push_back(lonlat(obs.polygon.front()));
    features.push_back(
      {{"type", "Feature"},
       {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
       {"properties", {{"kind", "obstruction"}, {"fill", style.obstruction}}}});
  }
  for (const auto & row : rows) {
    features.push_back(
      {{"type", "Feature"},
       {"geometry", {{"type", "Point"}, {"coordinates", lonlat(row.vehicle)}}},
       {"properties",
        {{"kind", "vehicle"},
         {"t_ms", row.t_ms},
         {"warning", std::string(warning::to_token(row.warning))},
         {"color", style.vehicle(row.warning)}}}});
    features.push_back(
      {{"type", "Feature"},
       {"geometry", {{"type", "Point"}, {"coordinates", lonlat(row.pedestrian)}}},
       {"properties", {{"kind", "pedestrian"}, {"t_ms", row.t_ms}, {"color", style.pedestrian}}}});
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

}  // namespace p2v::render

#endif  // P2V__RENDER_HPP_
