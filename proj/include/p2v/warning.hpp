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

#ifndef P2V__WARNING_HPP_
#define P2V__WARNING_HPP_

#include "p2v/prediction.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace p2v::warning
{

using prediction::PredictionResult;

enum class WarningLevel : std::uint8_t {
  kNone = 0,
  kYellow = 1,
  kOrange = 2,
  kRed = 3,
};

inline std::string_view to_token(WarningLevel level)
{
  switch (level) {
    case WarningLevel::kNone: return "none";
    case WarningLevel::kYellow: return "yellow";
    case WarningLevel::kOrange: return "orange";
    case WarningLevel::kRed: return "red";
  }
  return "none";
}

inline std::optional<WarningLevel> parse_level(std::string_view token)
{
  for (auto level :
       {WarningLevel::kNone, WarningLevel::kYellow, WarningLevel::kOrange, WarningLevel::kRed}) {
    if (to_token(level) == token) {
      return level;
    }
  }
  return std::nullopt;
}

struct WarningParams
{
  double yellow_ttz_s{10.0};
  double orange_ttz_s{6.0};
  double a_brake_mps2{6.0};
  std::int64_t hold_ms{1000};
  std::int64_t staleness_ms{2000};
  // Driver reaction allowance; shortens the distance available for braking.
  double reaction_margin_s{0.0};
};

inline std::vector<std::string> validate(const WarningParams & p)
{
  std::vector<std::string> out;
  if (!(p.orange_ttz_s > 0.0)) out.emplace_back("warning.orange_ttz_s must be > 0");
  if (!(p.yellow_ttz_s > p.orange_ttz_s)) {
    out.emplace_back("warning.yellow_ttz_s must be > orange_ttz_s");
  }
  if (!(p.a_brake_mps2 > 0.0)) out.emplace_back("warning.a_brake_mps2 must be > 0");
  if (p.hold_ms < 0) out.emplace_back("warning.hold_ms must be >= 0");
  if (p.staleness_ms < 0) out.emplace_back("warning.staleness_ms must be >= 0");
  if (!(p.reaction_margin_s >= 0.0)) out.emplace_back("warning.reaction_margin_s must be >= 0");
  return out;
}

class ZeroDistance : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

class ClockRegression : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

/// Constant deceleration that stops a vehicle at v m/s exactly d m ahead.
inline double min_deceleration(double v_mps, double d_m)
{
  if (!(d_m > 0.0)) {
    throw ZeroDistance("ZeroDistance: distance to zone must be > 0");
  }
  return v_mps * v_mps / (2.0 * d_m);
}

/// Instantaneous severity. Red is dynamic (required deceleration beyond full
/// braking); Orange and Yellow are fixed thresholds on the vehicle TTZ.
inline WarningLevel severity(const PredictionResult & pred, double v_mps, const WarningParams & params)
{
  if (!pred.collision_predicted || !pred.ttz_vehicle_s || !pred.d_vehicle_m) {
    return WarningLevel::kNone;
  }
  const double usable_m = *pred.d_vehicle_m - v_mps * params.reaction_margin_s;
  if (usable_m <= 0.0) {
    return v_mps > 0.0 ? WarningLevel::kRed : WarningLevel::kNone;
  }
  if (min_deceleration(v_mps, usable_m) > params.a_brake_mps2) {
    return WarningLevel::kRed;
  }
  const double ttz_v = *pred.ttz_vehicle_s;
  if (ttz_v <= params.orange_ttz_s) {
    return WarningLevel::kOrange;
  }
  if (ttz_v <= params.yellow_ttz_s) {
    return WarningLevel::kYellow;
  }
  return WarningLevel::kNone;
}

// Debounces per-tick severities into the displayed warning.
//
// Escalation is immediate. The displayed level drops only after the raw
// severity has stayed below it for hold_ms, and then drops to the current raw
// level. A nullopt assessment means no fresh pedestrian data this tick: the
// last raw severity is reused until staleness_ms after the last fresh one,
// after which the raw severity is None.
//
// Not thread-safe; one owner at a time.
class WarningStateMachine
{
public:
  explicit WarningStateMachine(WarningParams params = {}) : params_(params) {}

  WarningLevel step(
    const std::optional<PredictionResult> & assessment, double v_mps, std::int64_t now_ms)
  {
    if (now_ms < last_step_ms_) {
      throw ClockRegression("ClockRegression: now_ms went backwards");
    }
    last_step_ms_ = now_ms;

    WarningLevel raw = WarningLevel::kNone;
    if (assessment) {
      raw = severity(*assessment, v_mps, params_);
      last_fresh_ms_ = now_ms;
      last_raw_ = raw;
    } else if (last_fresh_ms_ != kNever && now_ms - last_fresh_ms_ <= params_.staleness_ms) {
      raw = last_raw_;
    }

    if (raw >= level_) {
      level_ = raw;
      last_support_ms_ = now_ms;
    } else if (now_ms - last_support_ms_ >= params_.hold_ms) {
      level_ = raw;
      last_support_ms_ = now_ms;
    }
    return level_;
  }

  WarningLevel level() const noexcept { return level_; }
  const WarningParams & params() const noexcept { return params_; }

private:
  WarningParams params_;
  WarningLevel level_{WarningLevel::kNone};
  WarningLevel last_raw_{WarningLevel::kNone};
  std::int64_t last_support_ms_{0};
  // Plain sentinels rather than optionals; GCC 11 misreports the latter as
  // maybe-uninitialized once inlined into the simulation loop.
  static constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::min();
  std::int64_t last_fresh_ms_{kNever};
  std::int64_t last_step_ms_{kNever};
};

}  // namespace p2v::warning

#endif  // P2V__WARNING_HPP_
