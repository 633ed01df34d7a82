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

#ifndef P2V__CLI_HPP_
#define P2V__CLI_HPP_

// Command implementations behind the `p2v` tool. Each returns the process
// exit status: 0 success, 1 runtime error, 2 configuration error.

#include "p2v/psm_codec.hpp"
#include "p2v/render.hpp"
#include "p2v/scenario_io.hpp"
#include "p2v/sim.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace p2v::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitConfig = 2;

struct RunOptions
{
  bool use_default{false};
  std::optional<std::string> config_path;
  std::optional<std::string> out_path;
  std::vector<std::string> overrides;
};

inline void print_config_error(const sim::ConfigInvalid & e, std::ostream & err)
{
  err << "config error:\n";
  for (const auto & d : e.diagnostics()) {
    err << "  " << d << '\n';
  }
}

inline int cmd_run(const RunOptions & opts, std::ostream & out, std::ostream & err)
{
  sim::ScenarioConfig config;
  try {
    if (opts.use_default == opts.config_path.has_value()) {
      throw sim::ConfigInvalid({"exactly one of --default or --config PATH is required"});
    }
    config = opts.use_default ? sim::default_scenario() : io::load_config(*opts.config_path);
    config = io::apply_overrides(config, opts.overrides);
  } catch (const sim::ConfigInvalid & e) {
    print_config_error(e, err);
    return kExitConfig;
  }

  try {
    const auto trace = sim::run_scenario(config);
    if (opts.out_path) {
      std::ofstream file(*opts.out_path, std::ios::binary);
      if (!file) {
        err << "cannot write trace: " << *opts.out_path << '\n';
        return kExitRuntime;
      }
      io::write_trace_csv(trace, file);
    }
    out << io::format_summary(io::summarize(trace, config.channel.adv_interval_ms)) << '\n';
  } catch (const std::exception & e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

/// `foo.svg` -> `foo.geojson`.
inline std::string sidecar_path(const std::string & out_path)
{
  std::filesystem::path p(out_path);
  p.replace_extension(".geojson");
  return p.string();
}

inline int cmd_plot(
  const std::string & trace_path, const std::string & out_path,
  const std::optional<std::string> & config_path, std::ostream & out, std::ostream & err)
{
  sim::ScenarioConfig config;
  try {
    config = config_path ? io::load_config(*config_path) : sim::default_scenario();
  } catch (const sim::ConfigInvalid & e) {
    print_config_error(e, err);
    return kExitConfig;
  }

  std::vector<io::TraceRow> rows;
  try {
    std::ifstream in(trace_path, std::ios::binary);
    if (!in) {
      throw io::TraceError("cannot open trace: " + trace_path);
    }
    rows = io::read_trace_csv(in);
  } catch (const io::TraceError & e) {
    err << "trace error: " << e.what() << '\n';
    return kExitRuntime;
  }

  try {
    const std::string geojson_path = sidecar_path(out_path);
    std::ofstream svg(out_path, std::ios::binary);
    std::ofstream geojson(geojson_path, std::ios::binary);
    if (!svg || !geojson) {
      err << "cannot write output: " << out_path << '\n';
      return kExitRuntime;
    }
    svg << render::render_svg(rows, config.obstructions);
    geojson << render::render_geojson(rows, config.obstructions, config.origin).dump(1) << '\n';
    out << "wrote " << out_path << " and " << geojson_path << '\n';
  } catch (const std::exception & e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

namespace detail
{

inline bool parse_int(const std::string & text, std::int32_t & out)
{
  long long value = 0;
  const auto * end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc{} || res.ptr != end || value < INT32_MIN || value > INT32_MAX) {
    return false;
  }
  out = static_cast<std::int32_t>(value);
  return true;
}

// Parses `key=value` tokens into a message; unset fields stay zero/unavailable.
inline psm::PsmMessage parse_fields(const std::vector<std::string> & tokens)
{
  using psm::CodecError;
  psm::PsmMessage msg;
  for (const auto & token : tokens) {
    const auto eq = token.find('=');
    const std::string key = token.substr(0, eq);
    const std::string value = eq == std::string::npos ? std::string() : token.substr(eq + 1);
    bool ok = eq != std::string::npos;
    if (!ok) {
    } else if (key == "msg_count") {
      ok = parse_int(value, msg.msg_count);
    } else if (key == "second_mark") {
      ok = parse_int(value, msg.second_mark);
    } else if (key == "latitude") {
      ok = parse_int(value, msg.latitude);
    } else if (key == "longitude") {
      ok = parse_int(value, msg.longitude);
    } else if (key == "speed") {
      ok = parse_int(value, msg.speed);
    } else if (key == "heading") {
      ok = parse_int(value, msg.heading);
    } else if (key == "basic_type") {
      ok = psm::parse_token(value, psm::kBasicTypeCount, msg.basic_type);
    } else if (key == "device_use_state") {
      ok = psm::parse_token(value, psm::kDeviceUseStateCount, msg.device_use_state);
    } else if (key == "cross_request") {
      ok = value == "true" || value == "false" || value == "1" || value == "0";
      msg.cross_request = value == "true" || value == "1";
    } else if (key == "cluster_size") {
      ok = parse_int(value, msg.cluster_size);
    } else if (key == "attachment") {
      ok = psm::parse_token(value, psm::kAttachmentCount, msg.attachment);
    } else {
      ok = false;
    }
    if (!ok) {
      throw CodecError(CodecError::Kind::kInvalidField, key);
    }
  }
  return msg;
}

}  // namespace detail

inline void print_fields(const psm::PsmMessage & m, std::ostream & out)
{
  out << "msg_count=" << m.msg_count << '\n'
      << "second_mark=" << m.second_mark << '\n'
      << "latitude=" << m.latitude << '\n'
      << "longitude=" << m.longitude << '\n'
      << "speed=" << m.speed << '\n'
      << "heading=" << m.heading << '\n'
      << "basic_type=" << psm::to_token(m.basic_type) << '\n'
      << "device_use_state=" << psm::to_token(m.device_use_state) << '\n'
      << "cross_request=" << (m.cross_request ? "true" : "false") << '\n'
      << "cluster_size=" << m.cluster_size << '\n'
      << "attachment=" << psm::to_token(m.attachment) << '\n';
}

/// encode: payload is key=value tokens, prints 40 hex chars.
/// decode: payload is one hex string, prints key=value lines.
inline int cmd_codec(
  const std::string & mode, const std::vector<std::string> & payload, std::ostream & out,
  std::ostream & err)
{
  try {
    if (mode == "encode") {
      out << psm::to_hex(psm::encode_psm(detail::parse_fields(payload))) << '\n';
      return kExitOk;
    }
    if (mode == "decode") {
      if (payload.size() != 1) {
        throw psm::CodecError(psm::CodecError::Kind::kBadLength);
      }
      print_fields(psm::decode_psm(psm::from_hex(payload.front())), out);
      return kExitOk;
    }
    err << "unknown codec mode: " << mode << " (expected encode or decode)\n";
    return kExitRuntime;
  } catch (const psm::CodecError & e) {
    err << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace p2v::cli

#endif  // P2V__CLI_HPP_
