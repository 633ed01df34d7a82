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

#ifndef P2V__SIM_HPP_
#define P2V__SIM_HPP_

#include "p2v/channel.hpp"
#include "p2v/geo.hpp"
#include "p2v/prediction.hpp"
#include "p2v/psm_codec.hpp"
#include "p2v/warning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace p2v::sim
{

using geo::AgentState;
using geo::GeoPoint;
using geo::LocalPoint;
using warning::WarningLevel;

struct AgentStart
{
  LocalPoint start;
  double heading_deg{0.0};
  double speed_mps{0.0};
};

/// Closed-loop stand-in for the human driver.
struct DriverModel
{
  std::int64_t reaction_ms{500};
  double decel_yellow{0.0};
  double decel_orange{2.5};
  double decel_red{6.0};

  double decel_for(WarningLevel level) const
  {
    switch (level) {
      case WarningLevel::kNone: return 0.0;
      case WarningLevel::kYellow: return decel_yellow;
      case WarningLevel::kOrange: return decel_orange;
      case WarningLevel::kRed: return decel_red;
    }
    return 0.0;
  }
};

struct ScenarioConfig
{
  GeoPoint origin;
  geo::CollisionZone zone;
  std::vector<channel::Obstruction> obstructions;
  AgentStart vehicle;
  AgentStart pedestrian;
  channel::ChannelParams channel;
  warning::WarningParams warning;
  DriverModel driver;
  double t_s_s{prediction::kDefaultSafetyMarginS};
  double gps_sigma_m{1.5};
  std::int64_t tick_ms{50};
  std::int64_t duration_ms{30000};
  std::uint64_t seed{1};
};

struct TraceRecord
{
  std::int64_t t_ms{0};
  AgentState vehicle_true;
  AgentState pedestrian_true;
  std::optional<AgentState> vehicle_meas;
  std::optional<AgentState> pedestrian_meas_at_vehicle;
  bool psm_delivered{false};
  bool los{false};
  std::optional<double> ttz_v;
  std::optional<double> ttz_p;
  WarningLevel warning{WarningLevel::kNone};
};

class ConfigInvalid : public std::invalid_argument
{
public:
  explicit ConfigInvalid(std::vector<std::string> diagnostics)
  : std::invalid_argument(join(diagnostics)), diagnostics_(std::move(diagnostics))
  {
  }

  const std::vector<std::string> & diagnostics() const noexcept { return diagnostics_; }

private:
  static std::string join(const std::vector<std::string> & items)
  {
    std::string out = "ConfigInvalid";
    for (const auto & item : items) {
      out += "; " + item;
    }
    return out;
  }

  std::vector<std::string> diagnostics_;
};

inline std::vector<std::string> validate(const ScenarioConfig & c)
{
  std::vector<std::string> out;
  auto add = [&out](const std::vector<std::string> & more) {
    out.insert(out.end(), more.begin(), more.end());
  };
  if (!(std::abs(c.origin.lat_deg) < 90.0)) out.emplace_back("origin.lat_deg must be in (-90, 90)");
  if (!(std::abs(c.origin.lon_deg) <= 180.0)) out.emplace_back("origin.lon_deg must be in [-180, 180]");
  if (!geo::is_valid(c.zone)) {
    out.emplace_back("zone: half_length_m and half_width_m must be > 0, axis_heading_deg in [0, 360)");
  }
  for (std::size_t i = 0; i < c.obstructions.size(); ++i) {
    for (const auto & msg : channel::validate(c.obstructions[i])) {
      out.push_back("obstructions[" + std::to_string(i) + "]: " + msg);
    }
  }
  for (const auto * agent : {&c.vehicle, &c.pedestrian}) {
    const std::string name = agent == &c.vehicle ? "vehicle" : "pedestrian";
    if (!(agent->speed_mps >= 0.0)) out.push_back(name + ".speed_mps must be >= 0");
    if (!(agent->heading_deg >= 0.0 && agent->heading_deg < 360.0)) {
      out.push_back(name + ".heading_deg must be in [0, 360)");
    }
    if (!(geo::norm(agent->start) <= geo::kMaxProjectionRangeM)) {
      out.push_back(name + ".start must be within 10 km of origin");
    }
  }
  add(channel::validate(c.channel));
  add(warning::validate(c.warning));
  const auto & d = c.driver;
  if (d.reaction_ms < 0) out.emplace_back("driver.reaction_ms must be >= 0");
  if (!(0.0 <= d.decel_yellow && d.decel_yellow <= d.decel_orange && d.decel_orange <= d.decel_red)) {
    out.emplace_back("driver: need 0 <= decel_yellow <= decel_orange <= decel_red");
  }
  if (!(c.t_s_s > 0.0)) out.emplace_back("t_s_s must be > 0");
  if (!(c.gps_sigma_m >= 0.0)) out.emplace_back("gps_sigma_m must be >= 0");
  if (c.tick_ms <= 0) out.emplace_back("tick_ms must be > 0");
  if (c.duration_ms < c.tick_ms) out.emplace_back("duration_ms must be >= tick_ms");
  return out;
}

/// Straight-line kinematics. Speed never goes negative: if it reaches zero
/// mid-step the agent stops there.
inline AgentState step_agent(const AgentState & state, double accel_mps2, std::int64_t dt_ms)
{
  if (dt_ms <= 0) {
    throw std::invalid_argument("dt_ms must be > 0");
  }
  const double dt = static_cast<double>(dt_ms) / 1000.0;
  const double v0 = state.speed_mps;
  double v1 = v0 + accel_mps2 * dt;
  double travel = 0.0;
  if (v1 >= 0.0) {
    travel = v0 * dt + 0.5 * accel_mps2 * dt * dt;
  } else {
    // Stops at t = -v0 / a.
    travel = v0 * v0 / (-2.0 * accel_mps2);
    v1 = 0.0;
  }
  AgentState next = state;
  next.position = state.position + geo::heading_unit(state.heading_deg) * travel;
  next.speed_mps = v1;
  next.timestamp_ms = state.timestamp_ms + dt_ms;
  return next;
}

/// Adds independent N(0, sigma^2) noise to each position axis.
inline AgentState gps_fix(const AgentState & truth, double sigma_m, std::mt19937_64 & rng)
{
  if (sigma_m < 0.0) {
    throw std::invalid_argument("sigma_m must be >= 0");
  }
  if (sigma_m == 0.0) {
    return truth;
  }
  std::normal_distribution<double> noise(0.0, sigma_m);
  AgentState fix = truth;
  fix.position.east_m += noise(rng);
  fix.position.north_m += noise(rng);
  return fix;
}

/// Builds the PSM a pedestrian phone would broadcast for a GPS fix.
inline psm::PsmMessage psm_from_state(
  const AgentState & fix, const GeoPoint & origin, std::int32_t msg_count)
{
  const GeoPoint where = geo::from_local(origin, fix.position);
  psm::PsmMessage msg;
  msg.msg_count = msg_count % 128;
  msg.second_mark = static_cast<std::int32_t>(fix.timestamp_ms % 60000);
  msg.latitude = static_cast<std::int32_t>(std::llround(where.lat_deg / psm::kDegreesPerLatLonUnit));
  msg.longitude = static_cast<std::int32_t>(std::llround(where.lon_deg / psm::kDegreesPerLatLonUnit));
  const auto speed_units = std::llround(fix.speed_mps / psm::kMpsPerSpeedUnit);
  msg.speed = static_cast<std::int32_t>(std::min<long long>(speed_units, psm::kSpeedUnavailable - 1));
  msg.heading = static_cast<std::int32_t>(
    std::llround(geo::normalize_heading(fix.heading_deg) / psm::kDegreesPerHeadingUnit) % 28800);
  msg.basic_type = psm::BasicType::kPedestrian;
  msg.device_use_state = psm::DeviceUseState::kIdle;
  msg.cross_request = true;
  return msg;
}

/// Receiver-side view of a PSM at time now_ms, dead-reckoned forward from its
/// second_mark by at most max_age_ms. nullopt when speed or heading is
/// unavailable.
inline std::optional<AgentState> state_from_psm(
  const psm::PsmMessage & msg, const GeoPoint & origin, std::int64_t now_ms,
  std::int64_t max_age_ms)
{
  if (msg.speed == psm::kSpeedUnavailable || msg.heading == psm::kHeadingUnavailable) {
    return std::nullopt;
  }
  const GeoPoint where{
    msg.latitude * psm::kDegreesPerLatLonUnit, msg.longitude * psm::kDegreesPerLatLonUnit};
  AgentState state;
  state.position = geo::to_local(origin, where);
  state.speed_mps = msg.speed * psm::kMpsPerSpeedUnit;
  state.heading_deg = msg.heading * psm::kDegreesPerHeadingUnit;
  const std::int64_t age_ms = std::min<std::int64_t>(
    ((now_ms % 60000) - msg.second_mark + 60000) % 60000, max_age_ms);
  state.position =
    state.position + geo::heading_unit(state.heading_deg) * (state.speed_mps * age_ms / 1000.0);
  state.timestamp_ms = now_ms;
  return state;
}

/// Runs the closed loop: truth -> GPS -> PSM -> channel -> assess -> warn ->
/// driver. One record per tick; deterministic for a fixed config.
inline std::vector<TraceRecord> run_scenario(const ScenarioConfig & config)
{
  if (auto problems = validate(config); !problems.empty()) {
    throw ConfigInvalid(std::move(problems));
  }

  auto stream = [&config](std::uint32_t id) {
    std::seed_seq seq{
      static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32), id};
    return std::mt19937_64(seq);
  };
  std::mt19937_64 vehicle_gps = stream(1);
  std::mt19937_64 pedestrian_gps = stream(2);

  AgentState vehicle{config.vehicle.start, config.vehicle.speed_mps, config.vehicle.heading_deg, 0};
  AgentState pedestrian{
    config.pedestrian.start, config.pedestrian.speed_mps, config.pedestrian.heading_deg, 0};

  warning::WarningStateMachine warnings(config.warning);
  std::optional<psm::PsmMessage> last_psm;
  std::int64_t last_rx_ms = 0;
  std::int64_t next_adv_ms = 0;
  std::int32_t msg_count = 0;
  double braking = 0.0;

  const std::int64_t ticks = config.duration_ms / config.tick_ms;
  std::vector<TraceRecord> trace;
  trace.reserve(static_cast<std::size_t>(ticks + 1));

  for (std::int64_t k = 0; k <= ticks; ++k) {
    const std::int64_t now = k * config.tick_ms;
    TraceRecord rec;
    rec.t_ms = now;
    rec.vehicle_true = vehicle;
    rec.pedestrian_true = pedestrian;
    rec.los = channel::is_los(vehicle.position, pedestrian.position, config.obstructions);

    const AgentState vehicle_fix = gps_fix(vehicle, config.gps_sigma_m, vehicle_gps);
    const AgentState pedestrian_fix = gps_fix(pedestrian, config.gps_sigma_m, pedestrian_gps);
    rec.vehicle_meas = vehicle_fix;

    if (now >= next_adv_ms) {
      next_adv_ms += config.channel.adv_interval_ms;
      const auto frame = psm::encode_psm(psm_from_state(pedestrian_fix, config.origin, msg_count++));
      const auto received = channel::transmit(
        frame, pedestrian.position, vehicle.position, config.obstructions, config.channel,
        static_cast<std::uint64_t>(k));
      if (received) {
        last_psm = psm::decode_psm(*received);
        last_rx_ms = now;
        rec.psm_delivered = true;
      }
    }

    std::optional<prediction::PredictionResult> assessment;
    if (last_psm && now - last_rx_ms <= config.warning.staleness_ms) {
      rec.pedestrian_meas_at_vehicle =
        state_from_psm(*last_psm, config.origin, now, config.warning.staleness_ms);
      if (rec.pedestrian_meas_at_vehicle) {
        assessment = prediction::assess(
          vehicle_fix, *rec.pedestrian_meas_at_vehicle, config.zone, config.t_s_s);
      } else {
        assessment = prediction::PredictionResult{};
      }
      rec.ttz_v = assessment->ttz_vehicle_s;
      rec.ttz_p = assessment->ttz_pedestrian_s;
    }
    rec.warning = warnings.step(assessment, vehicle_fix.speed_mps, now);
    trace.push_back(rec);

    // The driver acts on what was displayed reaction_ms ago, keeps braking at
    // the strongest deceleration seen so far, and lets go once stopped with
    // nothing on the display.
    WarningLevel perceived = WarningLevel::kNone;
    if (const std::int64_t seen_at = now - config.driver.reaction_ms; seen_at >= 0) {
      perceived = trace[static_cast<std::size_t>(seen_at / config.tick_ms)].warning;
    }
    braking = std::max(braking, config.driver.decel_for(perceived));
    if (vehicle.speed_mps <= 0.0 && perceived == WarningLevel::kNone) {
      braking = 0.0;
    }

    vehicle = step_agent(vehicle, -braking, config.tick_ms);
    pedestrian = step_agent(pedestrian, 0.0, config.tick_ms);
  }
  return trace;
}

/// T-intersection with a garage building hiding the pedestrian from the
/// approaching vehicle. Zone at the local origin; the vehicle drives east,
/// the pedestrian walks north across its path.
inline ScenarioConfig default_scenario()
{
  ScenarioConfig c;
  c.origin = {40.0, -83.0};
  c.zone = {{0.0, 0.0}, 3.0, 5.0, 90.0};
  c.obstructions = {channel::Obstruction{{{-60.0, -45.0}, {-8.0, -45.0}, {-8.0, -7.0}, {-60.0, -7.0}}}};
  c.vehicle = {{-90.0, 0.0}, 90.0, 8.0};
  c.pedestrian = {{0.0, -18.0}, 0.0, 1.4};
  c.t_s_s = prediction::kDefaultSafetyMarginS;
  c.gps_sigma_m = 1.5;
  c.tick_ms = 50;
  c.duration_ms = 30000;
  c.seed = 1;
  return c;
}

}  // namespace p2v::sim

#endif  // P2V__SIM_HPP_
