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

#ifndef P2V__SCENARIO_IO_HPP_
#define P2V__SCENARIO_IO_HPP_

#include "p2v/sim.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p2v::io
{

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scenario config (JSON). Every key is optional; absent keys keep the
// defaults of a value-initialised ScenarioConfig. See docs/scenario_schema.md.

inline json point_to_json(const geo::LocalPoint & p)
{
  return {{"east_m", p.east_m}, {"north_m", p.north_m}};
}

inline json to_json(const sim::ScenarioConfig & c)
{
  json obstructions = json::array();
  for (const auto & obs : c.obstructions) {
    json poly = json::array();
    for (const auto & v : obs.polygon) {
      poly.push_back({v.east_m, v.north_m});
    }
    obstructions.push_back({{"polygon", poly}});
  }
  auto agent = [](const sim::AgentStart & a) {
    return json{{"start", point_to_json(a.start)}, {"heading_deg", a.heading_deg}, {"speed_mps", a.speed_mps}};
  };
  return {
    {"origin", {{"lat_deg", c.origin.lat_deg}, {"lon_deg", c.origin.lon_deg}}},
    {"zone",
     {{"center", point_to_json(c.zone.center)},
      {"half_length_m", c.zone.half_length_m},
      {"half_width_m", c.zone.half_width_m},
      {"axis_heading_deg", c.zone.axis_heading_deg}}},
    {"obstructions", obstructions},
    {"vehicle", agent(c.vehicle)},
    {"pedestrian", agent(c.pedestrian)},
    {"channel",
     {{"los_range_m", c.channel.los_range_m},
      {"nlos_range_m", c.channel.nlos_range_m},
      {"floor_prob", c.channel.floor_prob},
      {"adv_interval_ms", c.channel.adv_interval_ms},
      {"seed", c.channel.seed}}},
    {"warning",
     {{"yellow_ttz_s", c.warning.yellow_ttz_s},
      {"orange_ttz_s", c.warning.orange_ttz_s},
      {"a_brake_mps2", c.warning.a_brake_mps2},
      {"hold_ms", c.warning.hold_ms},
      {"staleness_ms", c.warning.staleness_ms},
      {"reaction_margin_s", c.warning.reaction_margin_s}}},
    {"driver",
     {{"reaction_ms", c.driver.reaction_ms},
      {"decel_yellow", c.driver.decel_yellow},
      {"decel_orange", c.driver.decel_orange},
      {"decel_red", c.driver.decel_red}}},
    {"t_s_s", c.t_s_s},
    {"gps_sigma_m", c.gps_sigma_m},
    {"tick_ms", c.tick_ms},
    {"duration_ms", c.duration_ms},
    {"seed", c.seed},
  };
}

namespace detail
{

// Reads j[key] into out if present; type mismatches become diagnostics.
template <typename T>
void read(const json & j, const char * key, T & out, const std::string & path, std::vector<std::string> & errors)
{
  if (!j.is_object() || !j.contains(key)) {
    return;
  }
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &) {
    errors.push_back(path + key + ": wrong type");
  }
}

inline void read_point(
  const json & j, const char * key, geo::LocalPoint & out, const std::string & path,
  std::vector<std::string> & errors)
{
  if (!j.is_object() || !j.contains(key)) {
    return;
  }
  const auto & p = j.at(key);
  const std::string sub = path + key + ".";
  if (p.is_array() && p.size() == 2 && p[0].is_number() && p[1].is_number()) {
    out = {p[0].get<double>(), p[1].get<double>()};
    return;
  }
  read(p, "east_m", out.east_m, sub, errors);
  read(p, "north_m", out.north_m, sub, errors);
}

inline void read_agent(
  const json & j, const char * key, sim::AgentStart & out, std::vector<std::string> & errors)
{
  if (!j.contains(key)) {
    return;
  }
  const auto & a = j.at(key);
  const std::string path = std::string(key) + ".";
  read_point(a, "start", out.start, path, errors);
  read(a, "heading_deg", out.heading_deg, path, errors);
  read(a, "speed_mps", out.speed_mps, path, errors);
}

}  // namespace detail

/// Parses and validates; throws sim::ConfigInvalid with all diagnostics.
inline sim::ScenarioConfig config_from_json(const json & j)
{
  using detail::read;
  std::vector<std::string> errors;
  sim::ScenarioConfig c;
  if (!j.is_object()) {
    throw sim::ConfigInvalid({"config root must be a JSON object"});
  }
  if (j.contains("origin")) {
    read(j["origin"], "lat_deg", c.origin.lat_deg, "origin.", errors);
    read(j["origin"], "lon_deg", c.origin.lon_deg, "origin.", errors);
  }
  if (j.contains("zone")) {
    const auto & z = j["zone"];
    detail::read_point(z, "center", c.zone.center, "zone.", errors);
    read(z, "half_length_m", c.zone.half_length_m, "zone.", errors);
    read(z, "half_width_m", c.zone.half_width_m, "zone.", errors);
    read(z, "axis_heading_deg", c.zone.axis_heading_deg, "zone.", errors);
  }
  if (j.contains("obstructions")) {
    const auto & list = j["obstructions"];
    if (!list.is_array()) {
      errors.emplace_back("obstructions: must be an array");
    } else {
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = "obstructions[" + std::to_string(i) + "]";
        const auto & poly = list[i].is_object() ? list[i].value("polygon", json()) : json();
        if (!poly.is_array()) {
          errors.push_back(path + ".polygon: must be an array of [east, north] pairs");
          continue;
        }
        channel::Obstruction obs;
        for (const auto & v : poly) {
          if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            obs.polygon.push_back({v[0].get<double>(), v[1].get<double>()});
          } else if (v.is_object() && v.contains("east_m") && v.contains("north_m")) {
            geo::LocalPoint p;
            read(v, "east_m", p.east_m, path + ".", errors);
            read(v, "north_m", p.north_m, path + ".", errors);
            obs.polygon.push_back(p);
          } else {
            errors.push_back(path + ".polygon: bad vertex");
          }
        }
        c.obstructions.push_back(std::move(obs));
      }
    }
  }
  detail::read_agent(j, "vehicle", c.vehicle, errors);
  detail::read_agent(j, "pedestrian", c.pedestrian, errors);
  if (j.contains("channel")) {
    const auto & ch = j["channel"];
    read(ch, "los_range_m", c.channel.los_range_m, "channel.", errors);
    read(ch, "nlos_range_m", c.channel.nlos_range_m, "channel.", errors);
    read(ch, "floor_prob", c.channel.floor_prob, "channel.", errors);
    read(ch, "adv_interval_ms", c.channel.adv_interval_ms, "channel.", errors);
    read(ch, "seed", c.channel.seed, "channel.", errors);
  }
  if (j.contains("warning")) {
    const auto & w = j["warning"];
    read(w, "yellow_ttz_s", c.warning.yellow_ttz_s, "warning.", errors);
    read(w, "orange_ttz_s", c.warning.orange_ttz_s, "warning.", errors);
    read(w, "a_brake_mps2", c.warning.a_brake_mps2, "warning.", errors);
    read(w, "hold_ms", c.warning.hold_ms, "warning.", errors);
    read(w, "staleness_ms", c.warning.staleness_ms, "warning.", errors);
    read(w, "reaction_margin_s", c.warning.reaction_margin_s, "warning.", errors);
  }
  if (j.contains("driver")) {
    const auto & d = j["driver"];
    read(d, "reaction_ms", c.driver.reaction_ms, "driver.", errors);
    read(d, "decel_yellow", c.driver.decel_yellow, "driver.", errors);
    read(d, "decel_orange", c.driver.decel_orange, "driver.", errors);
    read(d, "decel_red", c.driver.decel_red, "driver.", errors);
  }
  read(j, "t_s_s", c.t_s_s, "", errors);
  read(j, "gps_sigma_m", c.gps_sigma_m, "", errors);
  read(j, "tick_ms", c.tick_ms, "", errors);
  read(j, "duration_ms", c.duration_ms, "", errors);
  read(j, "seed", c.seed, "", errors);

  if (errors.empty()) {
    errors = sim::validate(c);
  }
  if (!errors.empty()) {
    throw sim::ConfigInvalid(std::move(errors));
  }
  return c;
}

inline sim::ScenarioConfig load_config(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw sim::ConfigInvalid({"cannot open config file: " + path});
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error & e) {
    throw sim::ConfigInvalid({"config parse error: " + std::string(e.what())});
  }
  return config_from_json(j);
}

/// Applies "a.b.c=value" overrides. The value is parsed as JSON when it can
/// be, otherwise taken as a string. Unknown keys are errors.
inline sim::ScenarioConfig apply_overrides(
  const sim::ScenarioConfig & base, const std::vector<std::string> & overrides)
{
  json j = to_json(base);
  std::vector<std::string> errors;
  for (const auto & item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      errors.push_back("override must be KEY=VALUE: " + item);
      continue;
    }
    std::string pointer;
    std::stringstream keys(item.substr(0, eq));
    for (std::string part; std::getline(keys, part, '.');) {
      pointer += "/" + part;
    }
    const json::json_pointer ptr(pointer);
    if (!j.contains(ptr)) {
      errors.push_back("unknown override key: " + item.substr(0, eq));
      continue;
    }
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    j[ptr] = value.is_discarded() ? json(text) : value;
  }
  if (!errors.empty()) {
    throw sim::ConfigInvalid(std::move(errors));
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------
// Trace CSV. Column order is fixed:
//   t_ms,veh_e,veh_n,veh_v,ped_e,ped_n,ped_v,delivered,los,ttz_v,ttz_p,warning
// Positions and speeds are ground truth with three decimals; TTZ is seconds
// with three decimals or "never"; delivered/los are 0/1.

inline constexpr std::string_view kTraceHeader =
  "t_ms,veh_e,veh_n,veh_v,ped_e,ped_n,ped_v,delivered,los,ttz_v,ttz_p,warning";

struct TraceRow
{
  std::int64_t t_ms{0};
  geo::LocalPoint vehicle;
  double vehicle_speed{0.0};
  geo::LocalPoint pedestrian;
  double pedestrian_speed{0.0};
  bool delivered{false};
  bool los{false};
  std::optional<double> ttz_v;
  std::optional<double> ttz_p;
  warning::WarningLevel warning{warning::WarningLevel::kNone};
};

class TraceError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline std::string format_ttz(const std::optional<double> & t)
{
  if (!t) {
    return "never";
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", *t);
  return buf;
}

inline void write_trace_csv(const std::vector<sim::TraceRecord> & trace, std::ostream & out)
{
  out << kTraceHeader << '\n';
  char buf[256];
  for (const auto & r : trace) {
    std::snprintf(
      buf, sizeof(buf), "%lld,%.3f,%.3f,%.3f,%.3f,%.3f,%.3f,%d,%d,",
      static_cast<long long>(r.t_ms), r.vehicle_true.position.east_m, r.vehicle_true.position.north_m,
      r.vehicle_true.speed_mps, r.pedestrian_true.position.east_m,
      r.pedestrian_true.position.north_m, r.pedestrian_true.speed_mps, r.psm_delivered ? 1 : 0,
      r.los ? 1 : 0);
    out << buf << format_ttz(r.ttz_v) << ',' << format_ttz(r.ttz_p) << ','
        << warning::to_token(r.warning) << '\n';
  }
}

inline std::vector<TraceRow> read_trace_csv(std::istream & in)
{
  std::string line;
  if (!std::getline(in, line)) {
    throw TraceError("empty trace");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTraceHeader) {
    throw TraceError("unexpected trace header");
  }
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  auto number = [&line_no](const std::string & field) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(field, &used);
    } catch (const std::exception &) {
      used = 0;
    }
    if (used != field.size() || field.empty()) {
      throw TraceError("line " + std::to_string(line_no) + ": bad number '" + field + "'");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) {
      f.push_back(cell);
    }
    if (f.size() != 12) {
      throw TraceError("line " + std::to_string(line_no) + ": expected 12 columns");
    }
    TraceRow row;
    row.t_ms = static_cast<std::int64_t>(number(f[0]));
    row.vehicle = {number(f[1]), number(f[2])};
    row.vehicle_speed = number(f[3]);
    row.pedestrian = {number(f[4]), number(f[5])};
    row.pedestrian_speed = number(f[6]);
    row.delivered = number(f[7]) != 0.0;
    row.los = number(f[8]) != 0.0;
    if (f[9] != "never") row.ttz_v = number(f[9]);
    if (f[10] != "never") row.ttz_p = number(f[10]);
    const auto level = warning::parse_level(f[11]);
    if (!level) {
      throw TraceError("line " + std::to_string(line_no) + ": bad warning token '" + f[11] + "'");
    }
    row.warning = *level;
    rows.push_back(row);
  }
  if (rows.empty()) {
    throw TraceError("trace has no records");
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Run summary (single line, frozen format).

struct RunSummary
{
  std::size_t ticks{0};
  long long first_tick[4]{-1, -1, -1, -1};  // indexed by WarningLevel
  double vehicle_final_speed{0.0};
  double pedestrian_final_speed{0.0};
  std::size_t psm_sent{0};
  std::size_t psm_delivered{0};
};

inline RunSummary summarize(const std::vector<sim::TraceRecord> & trace, std::int64_t adv_interval_ms)
{
  RunSummary s;
  s.ticks = trace.size();
  std::int64_t next_adv = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto & r = trace[i];
    auto & first = s.first_tick[static_cast<int>(r.warning)];
    if (first < 0) first = static_cast<long long>(i);
    if (r.t_ms >= next_adv) {
      ++s.psm_sent;
      next_adv += adv_interval_ms;
    }
    if (r.psm_delivered) ++s.psm_delivered;
  }
  if (!trace.empty()) {
    s.vehicle_final_speed = trace.back().vehicle_true.speed_mps;
    s.pedestrian_final_speed = trace.back().pedestrian_true.speed_mps;
  }
  return s;
}

inline std::string format_summary(const RunSummary & s)
{
  const double ratio =
    s.psm_sent == 0 ? 0.0 : static_cast<double>(s.psm_delivered) / static_cast<double>(s.psm_sent);
  char buf[256];
  std::snprintf(
    buf, sizeof(buf),
    "ticks=%zu yellow_first_tick=%lld orange_first_tick=%lld red_first_tick=%lld "
    "veh_final_v=%.3f ped_final_v=%.3f delivery_ratio=%.4f",
    s.ticks, s.first_tick[1], s.first_tick[2], s.first_tick[3], s.vehicle_final_speed,
    s.pedestrian_final_speed, ratio);
  return buf;
}

}  // namespace p2v::io

#endif  // P2V__SCENARIO_IO_HPP_
