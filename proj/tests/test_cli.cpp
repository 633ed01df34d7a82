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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace p2v::cli
{
namespace
{

namespace fs = std::filesystem;

class Cli : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("p2v_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string & name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string & p)
  {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  int run(const RunOptions & opts) { return cmd_run(opts, out_, err_); }

  fs::path dir_;
  std::stringstream out_;
  std::stringstream err_;
};

long long field(const std::string & summary, const std::string & key)
{
  const auto at = summary.find(key + "=");
  return at == std::string::npos ? -2 : std::stoll(summary.substr(at + key.size() + 1));
}

TEST_F(Cli, RunDefaultPrintsSummary)
{
  RunOptions o;
  o.use_default = true;
  ASSERT_EQ(run(o), kExitOk) << err_.str();
  const auto s = out_.str();
  EXPECT_GE(field(s, "yellow_first_tick"), 0);
  EXPECT_LT(field(s, "yellow_first_tick"), field(s, "orange_first_tick"));
  EXPECT_EQ(field(s, "red_first_tick"), -1);
}

TEST_F(Cli, RunNeedsExactlyOneSource)
{
  EXPECT_EQ(run(RunOptions{}), kExitConfig);
  RunOptions both;
  both.use_default = true;
  both.config_path = path("x.json");
  EXPECT_EQ(run(both), kExitConfig);
}

TEST_F(Cli, MissingOrBrokenConfigIsConfigError)
{
  RunOptions o;
  o.config_path = path("missing.json");
  EXPECT_EQ(run(o), kExitConfig);
  std::ofstream(path("broken.json")) << "{ \"tick_ms\": ";
  o.config_path = path("broken.json");
  EXPECT_EQ(run(o), kExitConfig);
  std::ofstream(path("invalid.json")) << R"({"duration_ms": -5})";
  o.config_path = path("invalid.json");
  EXPECT_EQ(run(o), kExitConfig);
  EXPECT_NE(err_.str().find("duration_ms"), std::string::npos) << err_.str();
}

TEST_F(Cli, OverridesAreDeterministic)
{
  RunOptions o;
  o.use_default = true;
  o.overrides = {"channel.seed=5"};
  o.out_path = path("a.csv");
  ASSERT_EQ(run(o), kExitOk);
  o.out_path = path("b.csv");
  ASSERT_EQ(run(o), kExitOk);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  o.overrides = {"channel.seed=6"};
  o.out_path = path("c.csv");
  ASSERT_EQ(run(o), kExitOk);
  EXPECT_NE(slurp(path("a.csv")), slurp(path("c.csv")));
}

TEST_F(Cli, BadOverrideIsConfigError)
{
  RunOptions o;
  o.use_default = true;
  o.overrides = {"nope=1"};
  EXPECT_EQ(run(o), kExitConfig);
}

TEST_F(Cli, ConfigFileMatchesDefault)
{
  std::ofstream(path("default.json")) << io::to_json(sim::default_scenario()).dump(2);
  RunOptions a;
  a.use_default = true;
  a.out_path = path("a.csv");
  RunOptions b;
  b.config_path = path("default.json");
  b.out_path = path("b.csv");
  ASSERT_EQ(run(a), kExitOk);
  ASSERT_EQ(run(b), kExitOk) << err_.str();
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, PlotWritesSvgAndSidecar)
{
  RunOptions o;
  o.use_default = true;
  o.out_path = path("trace.csv");
  ASSERT_EQ(run(o), kExitOk);
  ASSERT_EQ(cmd_plot(path("trace.csv"), path("map.svg"), std::nullopt, out_, err_), kExitOk) << err_.str();
  EXPECT_EQ(slurp(path("map.svg")).rfind("<?xml", 0), 0u);
  const auto gj = nlohmann::json::parse(slurp(path("map.geojson")));
  EXPECT_EQ(gj["type"], "FeatureCollection");
  EXPECT_EQ(sidecar_path("out/map.svg"), "out/map.geojson");
}

TEST_F(Cli, PlotRejectsEmptyOrMissingTrace)
{
  std::ofstream(path("empty.csv")).flush();
  EXPECT_EQ(cmd_plot(path("empty.csv"), path("m.svg"), std::nullopt, out_, err_), kExitRuntime);
  EXPECT_EQ(cmd_plot(path("none.csv"), path("m.svg"), std::nullopt, out_, err_), kExitRuntime);
  EXPECT_EQ(cmd_plot(path("none.csv"), path("m.svg"), path("none.json"), out_, err_), kExitConfig);
}

TEST_F(Cli, CodecEncodeDecodeRoundTrip)
{
  ASSERT_EQ(
    cmd_codec(
      "encode",
      {"msg_count=5", "second_mark=1234", "latitude=400000000", "longitude=-830000000", "speed=70",
       "heading=0", "basic_type=pedestrian", "cross_request=true", "cluster_size=3"},
      out_, err_),
    kExitOk)
    << err_.str();
  std::string hex;
  out_ >> hex;
  ASSERT_EQ(hex.size(), 40u);
  EXPECT_EQ(hex.substr(10, 8), "17d78400");
  std::stringstream decoded;
  ASSERT_EQ(cmd_codec("decode", {hex}, decoded, err_), kExitOk);
  const auto text = decoded.str();
  EXPECT_NE(text.find("msg_count=5\n"), std::string::npos);
  EXPECT_NE(text.find("latitude=400000000\n"), std::string::npos);
  EXPECT_NE(text.find("longitude=-830000000\n"), std::string::npos);
  EXPECT_NE(text.find("basic_type=pedestrian\n"), std::string::npos);
  EXPECT_NE(text.find("cross_request=true\n"), std::string::npos);
  EXPECT_NE(text.find("cluster_size=3\n"), std::string::npos);
}

TEST_F(Cli, CodecErrors)
{
  EXPECT_EQ(cmd_codec("decode", {"2001"}, out_, err_), kExitRuntime);
  EXPECT_NE(err_.str().find("BadLength"), std::string::npos);
  err_.str("");
  EXPECT_EQ(cmd_codec("encode", {"speed=9000"}, out_, err_), kExitRuntime);
  EXPECT_NE(err_.str().find("InvalidField(speed)"), std::string::npos) << err_.str();
  err_.str("");
  EXPECT_EQ(cmd_codec("encode", {"colour=red"}, out_, err_), kExitRuntime);
  EXPECT_NE(err_.str().find("InvalidField(colour)"), std::string::npos) << err_.str();
  EXPECT_EQ(cmd_codec("transcode", {}, out_, err_), kExitRuntime);
}

}  // namespace
}  // namespace p2v::cli
