#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orbitdist/analysis.hpp"
#include "orbitdist/solvers.hpp"

namespace orbitdist {

struct SystemConfig {
  std::string family = "rotation";
  std::optional<double> param;  // set -> overrides golden_alpha
  bool golden_alpha = true;
  std::uint32_t alphabet_size = 2;
  long max_precision_bits = 1 << 20;
};

struct SamplerConfig {
  std::string kind = "lebesgue";  // lebesgue | atomic | orbit-tail
  std::vector<std::string> atoms;
  std::vector<double> weights;
  std::string base = "0";
  long burn_in = 1000;
  long stride = 17;
};

struct BenchConfig {
  int sorted_max_exp = 16;
  int cyclic_max_exp = 16;
  int exact_max_exp = 9;
  int entropic_max_exp = 9;
  bool floor_run = true;  // adds the sorted n = 10^6 row
};

// One run = one command + everything it needs. Serializes to a single JSON
// document; unknown keys are rejected so typos cannot silently fall back to
// defaults. Flags override file keys (precedence: preset < file < flags).
struct RunConfig {
  std::string command;  // orbit|fdist|fseq|scan-wme|scan-ta|probe|check-props|bench
  SystemConfig system;
  std::string x = "random";  // decimal, "p/q", digit pattern (shift), or "random"
  std::string y = "random";
  std::string z = "random";
  long n = 256;
  long start_index = 1;
  std::vector<long> schedule;  // empty -> geometric 64..4096
  std::string solver = "auto";
  long exact_threshold = 512;
  double epsilon = 1e-3;
  long max_iters = 2000;
  double tol = 0.05;             // membership tolerance
  double limit_tolerance = 0.01; // convergence tolerance for limit estimates
  double tail_fraction = 0.5;
  std::uint64_t seed = 1;
  std::string probe = "unique-ergodicity";  // | ergodicity | physical
  long num_pairs = 20;
  long num_points = 24;
  long grid_size = 16;
  bool adversarial = true;
  double mass_threshold = 0.05;
  double genericity_tol = 0.05;
  SamplerConfig sampler;
  std::vector<double> deltas = {0.1, 0.05, 0.01};
  std::vector<double> eps_ladder = {0.1, 0.05};
  std::string observable = "coordinate";
  double flag_floor = 0.1;
  std::vector<std::string> suites;  // check-props; empty -> all suites
  long trials = 0;                  // > 0 caps per-suite trial counts
  std::string fault_injection;      // "" | "corrupt-cost"
  BenchConfig bench;
  std::string out;      // JSON report path; "" -> stdout
  std::string csv_out;  // CSV table path; "" -> none (orbit: stdout)
};

RunConfig config_from_json_text(const std::string& text);
RunConfig config_from_file(const std::string& path);
// Canonical serialization: every key present, keys sorted; round-trips.
std::string config_to_json_text(const RunConfig& c);

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

SystemSpec system_from_config(const RunConfig& c);
Schedule schedule_from_config(const RunConfig& c);
FnOptions fn_options_from_config(const RunConfig& c);
EstimatorOptions estimator_options_from_config(const RunConfig& c);
SamplerSpec sampler_from_config(const SamplerConfig& c);

// "random" draws from the Lebesgue sampler; digit strings become periodic
// symbol streams on shift spaces; otherwise decimal / "p/q" coordinates.
SpacePoint point_from_config(const SystemSpec& spec, const std::string& text,
                             long horizon, Rng& rng);

}  // namespace orbitdist
