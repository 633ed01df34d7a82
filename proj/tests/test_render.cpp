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

#include "p2v/render.hpp"

#include <gtest/gtest.h>

#include <regex>
#include <set>
#include <sstream>

namespace p2v::render
{
namespace
{

std::vector<io::TraceRow> default_rows()
{
  std::stringstream csv;
  io::write_trace_csv(sim::run_scenario(sim::default_scenario()), csv);
  return io::read_trace_csv(csv);
}

std::set<std::string> circle_fills(const std::string & svg)
{
  static const std::regex fill(R"re(<circle [^>]*fill="(#[0-9a-f]{6})")re");
  std::set<std::string> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), fill); it != std::sregex_iterator(); ++it) {
    out.insert((*it)[1]);
  }
  return out;
}

TEST(Svg, DefaultRunUsesExpectedColors)
{
  const auto c = sim::default_scenario();
  const auto svg = render_svg(default_rows(), c.obstructions);
  const std::set<std::string> want{"#87cefa", "#00008b", "#ffd700", "#ff8c00"};
  EXPECT_EQ(circle_fills(svg), want);
  EXPECT_NE(svg.find("<polygon fill=\"#808080\""), std::string::npos);
}

TEST(Svg, OneCirclePerAgentPerRow)
{
  const auto rows = default_rows();
  const auto svg = render_svg(rows, {});
  std::size_t circles = 0;
  for (std::size_t at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1)) {
    ++circles;
  }
  EXPECT_EQ(circles, 2 * rows.size());
}

TEST(Svg, NorthIsUp)
{
  io::TraceRow south;
  south.pedestrian = {0.0, -10.0};
  io::TraceRow north;
  north.pedestrian = {0.0, 10.0};
  const std::vector<io::TraceRow> rows{south, north};
  const auto svg = render_svg(rows, {});
  // Bounds are (-5..5) x (-15..15) at 6 px/m; the first pedestrian is near the bottom.
  EXPECT_NE(svg.find("cx=\"30.00\" cy=\"150.00\""), std::string::npos) << svg;
  EXPECT_NE(svg.find("cx=\"30.00\" cy=\"30.00\""), std::string::npos) << svg;
}

TEST(Svg, Deterministic)
{
  const auto rows = default_rows();
  const auto c = sim::default_scenario();
  EXPECT_EQ(render_svg(rows, c.obstructions), render_svg(rows, c.obstructions));
}

TEST(GeoJson, FeatureCount)
{
  const auto rows = default_rows();
  const auto c = sim::default_scenario();
  const auto gj = render_geojson(rows, c.obstructions, c.origin);
  EXPECT_EQ(gj["type"], "FeatureCollection");
  EXPECT_EQ(gj["features"].size(), 2 * rows.size() + c.obstructions.size());
  const auto & first = gj["features"][0];
  EXPECT_EQ(first["geometry"]["type"], "Polygon");
  // Closed ring.
  const auto & ring = first["geometry"]["coordinates"][0];
  EXPECT_EQ(ring.front(), ring.back());
}

TEST(GeoJson, PointsMapBackThroughOrigin)
{
  io::TraceRow row;
  row.vehicle = {0.0, 0.0};
  row.pedestrian = {0.0, 111.32};
  const std::vector<io::TraceRow> rows{row};
  const geo::GeoPoint origin{40.0, -83.0};
  const auto gj = render_geojson(rows, {}, origin);
  const auto & veh = gj["features"][0]["geometry"]["coordinates"];
  EXPECT_DOUBLE_EQ(veh[0].get<double>(), -83.0);
  EXPECT_DOUBLE_EQ(veh[1].get<double>(), 40.0);
  const auto & ped = gj["features"][1]["geometry"]["coordinates"];
  EXPECT_NEAR(ped[1].get<double>(), 40.001, 1e-12);
}

}  // namespace
}  // namespace p2v::render
