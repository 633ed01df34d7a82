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

#include "p2v/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

int main(int argc, char ** argv)
{
  CLI::App app{"Pedestrian-to-vehicle safety toolkit"};
  app.require_subcommand(1);

  p2v::cli::RunOptions run_opts;
  std::string run_config;
  std::string run_out;
  auto * run = app.add_subcommand("run", "Run a scenario and write its CSV trace");
  run->add_flag("--default", run_opts.use_default, "Use the built-in T-intersection scenario");
  auto * config_opt = run->add_option("--config", run_config, "Scenario JSON file");
  auto * out_opt = run->add_option("--out", run_out, "Trace CSV output path");
  run->add_option("--override", run_opts.overrides, "KEY=VALUE config override (repeatable)");

  std::string trace_path;
  std::string plot_out;
  std::string plot_config;
  auto * plot = app.add_subcommand("plot", "Render a trace as SVG plus a GeoJSON sidecar");
  plot->add_option("--trace", trace_path, "Trace CSV")->required();
  plot->add_option("--out", plot_out, "SVG output path")->required();
  auto * plot_config_opt =
    plot->add_option("--config", plot_config, "Scenario JSON for origin and obstructions");

  std::string codec_mode;
  std::vector<std::string> codec_payload;
  auto * codec = app.add_subcommand("codec", "Encode or decode a PSM frame");
  codec->add_option("mode", codec_mode, "encode | decode")->required();
  codec->add_option("payload", codec_payload, "key=value fields, or a hex frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return p2v::cli::kExitConfig;
  }

  if (*run) {
    if (*config_opt) run_opts.config_path = run_config;
    if (*out_opt) run_opts.out_path = run_out;
    return p2v::cli::cmd_run(run_opts, std::cout, std::cerr);
  }
  if (*plot) {
    std::optional<std::string> cfg;
    if (*plot_config_opt) cfg = plot_config;
    return p2v::cli::cmd_plot(trace_path, plot_out, cfg, std::cout, std::cerr);
  }
  return p2v::cli::cmd_codec(codec_mode, codec_payload, std::cout, std::cerr);
}
