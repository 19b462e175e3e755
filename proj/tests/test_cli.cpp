#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "doctest.h"
#include "orbitdist/commands.hpp"
#include "orbitdist/config.hpp"
#include "orbitdist/errors.hpp"

using namespace orbitdist;

namespace {

std::string tmp_dir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/orbitdist-test-XXXXXX";
    const char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  REQUIRE(out.good());
  out << text;
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
  std::string out_file = tmp_dir() + "/" + tag + ".out";
  std::string err_file = tmp_dir() + "/" + tag + ".err";
  std::string cmd = std::string(ORBITDIST_CLI_PATH) + " " + args + " > " +
                    out_file + " 2> " + err_file;
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return {WEXITSTATUS(rc), slurp(out_file), slurp(err_file)};
}

// Timing values are the one intentionally non-reproducible part of a report.
std::string mask_wall_time(const std::string& text) {
  static const std::regex wall("\"(wall_time_seconds|seconds)\": [^,\n]*");
  return std::regex_replace(text, wall, "\"$1\": #");
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("configs round-trip through their canonical serialization") {
  RunConfig c;
  c.command = "probe";
  c.system.family = "tent";
  c.system.param = 1.7;
  c.schedule = {100, 200};
  c.deltas = {0.3, 0.01};
  c.sampler.kind = "atomic";
  c.sampler.atoms = {"1/3", "2/3"};
  c.sampler.weights = {0.25, 0.75};
  c.suites = {"prop31"};
  c.out = "report.json";
  std::string text = config_to_json_text(c);
  RunConfig back = config_from_json_text(text);
  CHECK(config_to_json_text(back) == text);
  CHECK(back.system.param.has_value());
  CHECK(*back.system.param == doctest::Approx(1.7));
  CHECK(back.schedule == std::vector<long>{100, 200});
  CHECK(back.sampler.atoms == std::vector<std::string>{"1/3", "2/3"});
}

TEST_CASE("default config round-trips with param absent") {
  RunConfig c;
  c.command = "fdist";
  RunConfig back = config_from_json_text(config_to_json_text(c));
  CHECK_FALSE(back.system.param.has_value());
  CHECK(config_to_json_text(back) == config_to_json_text(c));
}

TEST_CASE("unknown keys are rejected, not ignored") {
  CHECK_THROWS_AS(config_from_json_text("{\"comand\": \"fdist\"}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"system\": {\"famly\": \"tent\"}}"),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json_text("not json"), ConfigError);
  CHECK_NOTHROW(config_from_json_text("{\"command\": \"fdist\"}"));
}

TEST_CASE("config validation catches bad values") {
  CHECK_THROWS_AS(config_from_json_text("{\"tail_fraction\": 1.5}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"epsilon\": 0.0}"), ConfigError);
  CHECK_THROWS_AS(config_from_json_text("{\"max_iters\": 0}"), ConfigError);
  CHECK_THROWS_AS(
      config_from_json_text("{\"sampler\": {\"kind\": \"dirac\"}}"), ConfigError);
}

TEST_CASE("every preset resolves to a runnable command") {
  auto names = preset_names();
  CHECK(names.size() >= 14);
  for (const auto& name : names) {
    RunConfig c = preset_config(name);
    CHECK_FALSE(c.command.empty());
    // presets must round-trip like any config
    CHECK(config_to_json_text(config_from_json_text(config_to_json_text(c))) ==
          config_to_json_text(c));
  }
  CHECK_THROWS_AS(preset_config("nope"), ConfigError);
}

TEST_CASE("point literals parse deterministically") {
  auto spec = make_system(Family::Doubling);
  Rng rng(11, 0xA0);
  auto third = point_from_config(spec, "1/3", 64, rng);
  CHECK(coordinate_view(third) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  auto dec = point_from_config(spec, "0.125", 64, rng);
  CHECK(coordinate_view(dec) == doctest::Approx(0.125));
  CHECK_THROWS_AS(point_from_config(spec, "zebra", 64, rng), ConfigError);

  Rng r1(11, 0xA0), r2(11, 0xA0);
  auto a = point_from_config(spec, "random", 64, r1);
  auto b = point_from_config(spec, "random", 64, r2);
  CHECK(coordinate_view(a) == coordinate_view(b));

  auto shift = make_system(Family::FullShift);
  auto pat = point_from_config(shift, "0110", 8, rng);
  REQUIRE(pat.stream);
  const auto& s = *pat.stream;
  REQUIRE(s.size() >= 8);
  CHECK(s[0] == 0);
  CHECK(s[1] == 1);
  CHECK(s[2] == 1);
  CHECK(s[3] == 0);
  CHECK(s[4] == 0);  // pattern repeats
  CHECK_THROWS_AS(point_from_config(shift, "01x0", 8, rng), ConfigError);
}

TEST_CASE("run_command writes schema-tagged reports") {
  RunConfig c = preset_config("fseq-rotation");
  c.schedule = {16, 32, 64};
  c.out = tmp_dir() + "/fseq.json";
  CHECK(run_command(c) == 0);
  std::string text = slurp(c.out);
  CHECK(text.find("\"schema_version\": 1") != std::string::npos);
  CHECK(text.find("\"tool_version\"") != std::string::npos);
  CHECK(text.find("\"wall_time_seconds\"") != std::string::npos);
  CHECK(text.find("\"fbar_hat\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("unknown command is a config error") {
  RunConfig c;
  c.command = "explode";
  CHECK_THROWS_AS(run_command(c), ConfigError);
}

TEST_CASE("cli: orbit prints a csv table") {
  CliResult r = run_cli("orbit --preset orbit-demo", "orbit");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("index,coordinate\n", 0) == 0);
  CHECK(r.out.find("\n64,") != std::string::npos);
}

TEST_CASE("cli: configuration mistakes exit with code 2") {
  CHECK(run_cli("fdist --preset no-such-preset", "e2a").exit_code == 2);
  CHECK(run_cli("fdist --preset bench", "e2b").exit_code == 2);  // wrong command
  CHECK(run_cli("fdist --preset bench --config /dev/null", "e2c").exit_code == 2);
  CHECK(run_cli("fdist --config /nonexistent/path.json", "e2d").exit_code == 2);
  CHECK(run_cli("fdist --solver warp", "e2e").exit_code == 2);
  CHECK(run_cli("", "e2f").exit_code != 0);  // missing subcommand
  std::string bad = tmp_dir() + "/bad.json";
  spit(bad, "{\"comand\": \"fdist\"}");
  CHECK(run_cli("fdist --config " + bad, "e2g").exit_code == 2);
}

TEST_CASE("cli: probe failure exits with code 1 and a witness") {
  std::string cfg = tmp_dir() + "/doubling-probe.json";
  spit(cfg,
       "{\"command\": \"probe\", \"probe\": \"unique-ergodicity\",\n"
       " \"system\": {\"family\": \"doubling\"},\n"
       " \"num_pairs\": 2, \"schedule\": [128, 256, 512]}");
  CliResult r = run_cli("probe --config " + cfg, "e1");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"witness\"") != std::string::npos);
  CHECK(r.out.find("\"fails\"") != std::string::npos);
}

TEST_CASE("cli: precision exhaustion exits with code 3") {
  std::string cfg = tmp_dir() + "/tight.json";
  spit(cfg,
       "{\"command\": \"fseq\", \"system\": {\"family\": \"doubling\","
       " \"max_precision_bits\": 256}, \"schedule\": [1024, 2048]}");
  CliResult r = run_cli("fseq --config " + cfg, "e3");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("precision") != std::string::npos);
}

TEST_CASE("cli: env var caps the precision budget") {
  std::string cfg = tmp_dir() + "/envcap.json";
  spit(cfg,
       "{\"command\": \"fseq\", \"system\": {\"family\": \"doubling\"},"
       " \"schedule\": [1024, 2048]}");
  CliResult ok = run_cli("fseq --config " + cfg, "env_ok");
  CHECK(ok.exit_code == 0);
  std::string out_file = tmp_dir() + "/env_cap.out";
  std::string cmd = std::string("ORBITDIST_PRECISION_BITS=256 ") +
                    ORBITDIST_CLI_PATH + " fseq --config " + cfg + " > " +
                    out_file + " 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  CHECK(WEXITSTATUS(rc) == 3);
}

TEST_CASE("cli: flags override config keys") {
  std::string cfg = tmp_dir() + "/seeded.json";
  spit(cfg, "{\"command\": \"fseq\", \"schedule\": [16, 32], \"seed\": 5}");
  CliResult a = run_cli("fseq --config " + cfg, "ov_a");
  CliResult b = run_cli("fseq --config " + cfg + " --seed 9", "ov_b");
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(a.out.find("\"seed\": 5") != std::string::npos);
  CHECK(b.out.find("\"seed\": 9") != std::string::npos);
  CHECK(mask_wall_time(a.out) != mask_wall_time(b.out));
}

TEST_CASE("cli: reports are byte-identical across reruns") {
  CliResult a = run_cli("fseq --preset fseq-rotation", "det_a");
  CliResult b = run_cli("fseq --preset fseq-rotation", "det_b");
  CHECK(a.exit_code == 0);
  CHECK(mask_wall_time(a.out) == mask_wall_time(b.out));
  CHECK(a.out.find("\"wall_time_seconds\"") != std::string::npos);
}

TEST_CASE("cli: the embedded config reproduces its own report") {
  CliResult first = run_cli("scan-ta --preset thm15-s1 --seed 4", "emb_a");
  CHECK(first.exit_code == 0);
  // extract the config object embedded in the report
  auto begin = first.out.find("\"config\": {");
  REQUIRE(begin != std::string::npos);
  begin += 10;
  int depth = 0;
  std::size_t end = begin;
  for (; end < first.out.size(); ++end) {
    if (first.out[end] == '{') ++depth;
    if (first.out[end] == '}' && --depth == 0) break;
  }
  std::string cfg_path = tmp_dir() + "/embedded.json";
  spit(cfg_path, first.out.substr(begin, end - begin + 1));
  CliResult second = run_cli("scan-ta --config " + cfg_path, "emb_b");
  CHECK(second.exit_code == 0);
  CHECK(mask_wall_time(first.out) == mask_wall_time(second.out));
}

TEST_CASE("cli: fault injection is detected and reported") {
  std::string cfg = tmp_dir() + "/fault.json";
  spit(cfg,
       "{\"command\": \"check-props\", \"suites\": [\"prop31\"],"
       " \"trials\": 2, \"fault_injection\": \"corrupt-cost\"}");
  CliResult r = run_cli("check-props --config " + cfg, "fault");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("\"symmetry\"") != std::string::npos);
  CHECK(r.out.find("\"injected\": true") != std::string::npos);
  // the same suite passes clean
  std::string clean = tmp_dir() + "/clean.json";
  spit(clean,
       "{\"command\": \"check-props\", \"suites\": [\"prop31\"], \"trials\": 2}");
  CHECK(run_cli("check-props --config " + clean, "clean").exit_code == 0);
}

TEST_CASE("cli: scan csv artifacts match their schema") {
  std::string csv_path = tmp_dir() + "/scan.csv";
  std::string cfg = tmp_dir() + "/scan.json";
  spit(cfg,
       "{\"command\": \"scan-wme\", \"system\": {\"family\": \"identity\"},"
       " \"grid_size\": 4, \"deltas\": [0.1], \"schedule\": [8, 16]}");
  CliResult r = run_cli("scan-wme --config " + cfg + " --csv-out " + csv_path,
                        "csv");
  CHECK(r.exit_code == 0);
  std::string csv = slurp(csv_path);
  CHECK(csv.rfind("delta,modulus,contrast_modulus,raw_modulus,raw_contrast\n",
                  0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one rung
}

TEST_SUITE_END();
