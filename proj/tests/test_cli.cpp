// End-to-end CLI checks: golden-file stability for the committed scenarios,
// determinism under --seed, and error reporting that names the offending
// field. The binary path and source tree come in via compile definitions.
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <catch_amalgamated.hpp>

#include "test_util.hpp"

namespace {

const std::string kCli = SSLKIT_CLI_PATH;
const std::string kSrc = SSLKIT_SOURCE_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scenario(const std::string& name) {
  return kSrc + "/scenarios/" + name;
}

std::string golden(const std::string& name) {
  return kSrc + "/tests/golden/" + name;
}

}  // namespace

TEST_CASE("codec encode: the all-zero one-robot packet") {
  auto r = testutil::run_cmd(kCli + " codec encode --in " +
                             scenario("codec_zero.json"));
  REQUIRE(r.code == 0);
  CHECK(r.output == "01 00 00 00 00 00 00\n");
}

TEST_CASE("codec golden files round-trip") {
  auto enc = testutil::run_cmd(kCli + " codec encode --in " +
                               scenario("codec_demo.json"));
  REQUIRE(enc.code == 0);
  CHECK(enc.output == slurp(golden("codec_demo.hex")));

  auto dec = testutil::run_cmd(kCli + " codec decode --in " +
                               golden("codec_demo.hex"));
  REQUIRE(dec.code == 0);
  CHECK(dec.output == slurp(golden("codec_demo_decoded.json")));

  // encode(decode(x)) is byte-identical
  std::string tmp = "cli_tmp_decoded.json";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << dec.output;
  }
  auto re = testutil::run_cmd(kCli + " codec encode --in " + tmp);
  REQUIRE(re.code == 0);
  CHECK(re.output == enc.output);
  std::remove(tmp.c_str());
}

TEST_CASE("intercept scenario output is stable") {
  auto r = testutil::run_cmd(kCli + " intercept --scenario " +
                             scenario("intercept_rolling.json"));
  REQUIRE(r.code == 0);
  CHECK(r.output == slurp(golden("intercept_rolling.txt")));
}

TEST_CASE("assign scenario output is stable") {
  auto r = testutil::run_cmd(kCli + " assign --scenario " +
                             scenario("assign_demo.json"));
  REQUIRE(r.code == 0);
  CHECK(r.output == slurp(golden("assign_demo.txt")));
}

TEST_CASE("heatmap outputs are byte-stable and deterministic") {
  std::string cmd = kCli +
                    " heatmap --ball-x 400 --ball-y 450 --ball-speed 1000"
                    " --grid 40x30 --threads 2 --format both --out cli_tmp_hm";
  auto r1 = testutil::run_cmd(cmd);
  REQUIRE(r1.code == 0);
  std::string csv1 = slurp("cli_tmp_hm.csv");
  std::string pgm1 = slurp("cli_tmp_hm.pgm");
  CHECK(csv1 == slurp(golden("heatmap_slow.csv")));
  CHECK(pgm1 == slurp(golden("heatmap_slow.pgm")));

  auto r2 = testutil::run_cmd(cmd);
  REQUIRE(r2.code == 0);
  CHECK(slurp("cli_tmp_hm.csv") == csv1);
  CHECK(slurp("cli_tmp_hm.pgm") == pgm1);
  std::remove("cli_tmp_hm.csv");
  std::remove("cli_tmp_hm.pgm");
}

TEST_CASE("track over the demo frames matches the golden stream") {
  auto r = testutil::run_cmd(kCli + " track --frames " +
                             scenario("frames_demo.jsonl") + " --cameras " +
                             scenario("cameras_demo.json"));
  REQUIRE(r.code == 0);
  CHECK(r.output == slurp(golden("track_demo.jsonl")));
}

TEST_CASE("passrate: noiseless point is perfect and deterministic") {
  std::string cmd = kCli +
                    " passrate --sweep loss --values 0 --trials 2 --seed 5"
                    " --out cli_tmp_rate.csv";
  auto r1 = testutil::run_cmd(cmd);
  REQUIRE(r1.code == 0);
  std::string csv = slurp("cli_tmp_rate.csv");
  CHECK(csv == "param,value,rate\nloss,0.0000,1.0000\n");
  auto r2 = testutil::run_cmd(cmd);
  REQUIRE(r2.code == 0);
  CHECK(slurp("cli_tmp_rate.csv") == csv);
  std::remove("cli_tmp_rate.csv");
}

TEST_CASE("config file feeds the subcommands") {
  auto r = testutil::run_cmd(kCli + " intercept --scenario " +
                             scenario("intercept_rolling.json") + " --config " +
                             scenario("sim_default.cfg"));
  REQUIRE(r.code == 0);
  CHECK(r.output.find("kind:") != std::string::npos);
}

TEST_CASE("CLI errors are nonzero and name the problem") {
  CHECK(testutil::run_cmd(kCli + " heatmap --no-such-flag").code != 0);
  CHECK(testutil::run_cmd(kCli).code != 0);

  auto missing = testutil::run_cmd(kCli + " intercept --scenario /nonexistent.json");
  CHECK(missing.code == 1);
  CHECK(missing.output.find("cannot open") != std::string::npos);

  std::string bad = "cli_tmp_bad.json";
  {
    std::ofstream out(bad);
    out << R"({"robot": {"x": 0, "y": 0}})";
  }
  auto r = testutil::run_cmd(kCli + " intercept --scenario " + bad);
  CHECK(r.code == 1);
  CHECK(r.output.find("'ball'") != std::string::npos);
  std::remove(bad.c_str());

  auto grid = testutil::run_cmd(
      kCli + " heatmap --ball-x 100 --ball-y 100 --grid nope");
  CHECK(grid.code == 1);
  CHECK(grid.output.find("grid") != std::string::npos);
}
