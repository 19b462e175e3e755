#include "orbitdist/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

SystemConfig system_from_json(const json& j) {
  reject_unknown_keys(
      j, {"family", "param", "golden_alpha", "alphabet_size", "max_precision_bits"},
      "system");
  SystemConfig s;
  get_if(j, "family", s.family);
  if (auto it = j.find("param"); it != j.end() && !it->is_null())
    s.param = it->get<double>();
  get_if(j, "golden_alpha", s.golden_alpha);
  get_if(j, "alphabet_size", s.alphabet_size);
  get_if(j, "max_precision_bits", s.max_precision_bits);
  return s;
}

SamplerConfig sampler_from_json(const json& j) {
  reject_unknown_keys(j, {"kind", "atoms", "weights", "base", "burn_in", "stride"},
                      "sampler");
  SamplerConfig s;
  get_if(j, "kind", s.kind);
  get_if(j, "atoms", s.atoms);
  get_if(j, "weights", s.weights);
  get_if(j, "base", s.base);
  get_if(j, "burn_in", s.burn_in);
  get_if(j, "stride", s.stride);
  return s;
}

BenchConfig bench_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"sorted_max_exp", "cyclic_max_exp", "exact_max_exp",
                       "entropic_max_exp", "floor_run"},
                      "bench");
  BenchConfig b;
  get_if(j, "sorted_max_exp", b.sorted_max_exp);
  get_if(j, "cyclic_max_exp", b.cyclic_max_exp);
  get_if(j, "exact_max_exp", b.exact_max_exp);
  get_if(j, "entropic_max_exp", b.entropic_max_exp);
  get_if(j, "floor_run", b.floor_run);
  return b;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("config error: " + what);
}

// Range checks that hold for every command, so a bad file fails at load
// instead of halfway through a run. Command-specific constraints (schedule
// shape, sampler atoms, family params) stay with the code that consumes them.
void validate(const RunConfig& c) {
  if (!c.command.empty())
    require(c.command == "orbit" || c.command == "fdist" || c.command == "fseq" ||
                c.command == "scan-wme" || c.command == "scan-ta" ||
                c.command == "probe" || c.command == "check-props" ||
                c.command == "bench",
            "unknown command: " + c.command);
  require(c.n >= 1, "n must be at least 1");
  require(c.start_index >= 0, "start_index must be non-negative");
  for (long s : c.schedule) require(s >= 1, "schedule entries must be positive");
  solver_kind_from_name(c.solver);  // throws on unknown names
  require(c.exact_threshold >= 1, "exact_threshold must be at least 1");
  require(c.epsilon > 0.0, "epsilon must be positive");
  require(c.max_iters >= 1, "max_iters must be at least 1");
  require(c.tol > 0.0, "tol must be positive");
  require(c.limit_tolerance > 0.0, "limit_tolerance must be positive");
  require(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0,
          "tail_fraction must lie in (0, 1]");
  require(c.probe == "unique-ergodicity" || c.probe == "ergodicity" ||
              c.probe == "physical",
          "unknown probe: " + c.probe);
  require(c.num_pairs >= 1, "num_pairs must be at least 1");
  require(c.num_points >= 1, "num_points must be at least 1");
  require(c.grid_size >= 1, "grid_size must be at least 1");
  require(c.mass_threshold > 0.0 && c.mass_threshold < 1.0,
          "mass_threshold must lie in (0, 1)");
  require(c.genericity_tol > 0.0, "genericity_tol must be positive");
  require(c.sampler.kind == "lebesgue" || c.sampler.kind == "atomic" ||
              c.sampler.kind == "orbit-tail",
          "unknown sampler kind: " + c.sampler.kind);
  require(c.sampler.burn_in >= 0, "sampler burn_in must be non-negative");
  require(c.sampler.stride >= 1, "sampler stride must be at least 1");
  for (double w : c.sampler.weights)
    require(w >= 0.0, "sampler weights must be non-negative");
  for (double d : c.deltas)
    require(d > 0.0 && d <= 1.0, "deltas must lie in (0, 1]");
  for (double e : c.eps_ladder)
    require(e > 0.0 && e < 1.0, "eps_ladder entries must lie in (0, 1)");
  require(c.flag_floor >= 0.0, "flag_floor must be non-negative");
  require(c.trials >= 0, "trials must be non-negative");
  require(c.system.alphabet_size >= 2, "alphabet_size must be at least 2");
  require(c.system.max_precision_bits >= 64,
          "max_precision_bits must be at least 64");
  require(c.bench.sorted_max_exp >= 6 && c.bench.cyclic_max_exp >= 6 &&
              c.bench.exact_max_exp >= 6 && c.bench.entropic_max_exp >= 6,
          "bench ladder exponents must be at least 6");
}

}  // namespace

RunConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown_keys(
      j,
      {"command",      "system",          "x",
       "y",            "z",               "n",
       "start_index",  "schedule",        "solver",
       "exact_threshold", "epsilon",      "max_iters",
       "tol",          "limit_tolerance", "tail_fraction",
       "seed",         "probe",           "num_pairs",
       "num_points",   "grid_size",       "adversarial",
       "mass_threshold", "genericity_tol", "sampler",
       "deltas",       "eps_ladder",      "observable",
       "flag_floor",   "suites",          "trials",
       "fault_injection", "bench",        "out",
       "csv_out"},
      "config");
  RunConfig c;
  get_if(j, "command", c.command);
  if (auto it = j.find("system"); it != j.end()) c.system = system_from_json(*it);
  get_if(j, "x", c.x);
  get_if(j, "y", c.y);
  get_if(j, "z", c.z);
  get_if(j, "n", c.n);
  get_if(j, "start_index", c.start_index);
  get_if(j, "schedule", c.schedule);
  get_if(j, "solver", c.solver);
  get_if(j, "exact_threshold", c.exact_threshold);
  get_if(j, "epsilon", c.epsilon);
  get_if(j, "max_iters", c.max_iters);
  get_if(j, "tol", c.tol);
  get_if(j, "limit_tolerance", c.limit_tolerance);
  get_if(j, "tail_fraction", c.tail_fraction);
  get_if(j, "seed", c.seed);
  get_if(j, "probe", c.probe);
  get_if(j, "num_pairs", c.num_pairs);
  get_if(j, "num_points", c.num_points);
  get_if(j, "grid_size", c.grid_size);
  get_if(j, "adversarial", c.adversarial);
  get_if(j, "mass_threshold", c.mass_threshold);
  get_if(j, "genericity_tol", c.genericity_tol);
  if (auto it = j.find("sampler"); it != j.end()) c.sampler = sampler_from_json(*it);
  get_if(j, "deltas", c.deltas);
  get_if(j, "eps_ladder", c.eps_ladder);
  get_if(j, "observable", c.observable);
  get_if(j, "flag_floor", c.flag_floor);
  get_if(j, "suites", c.suites);
  get_if(j, "trials", c.trials);
  get_if(j, "fault_injection", c.fault_injection);
  if (auto it = j.find("bench"); it != j.end()) c.bench = bench_from_json(*it);
  get_if(j, "out", c.out);
  get_if(j, "csv_out", c.csv_out);
  validate(c);
  return c;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["system"] = {{"family", c.system.family},
                 {"param", c.system.param ? json(*c.system.param) : json(nullptr)},
                 {"golden_alpha", c.system.golden_alpha},
                 {"alphabet_size", c.system.alphabet_size},
                 {"max_precision_bits", c.system.max_precision_bits}};
  j["x"] = c.x;
  j["y"] = c.y;
  j["z"] = c.z;
  j["n"] = c.n;
  j["start_index"] = c.start_index;
  j["schedule"] = c.schedule;
  j["solver"] = c.solver;
  j["exact_threshold"] = c.exact_threshold;
  j["epsilon"] = c.epsilon;
  j["max_iters"] = c.max_iters;
  j["tol"] = c.tol;
  j["limit_tolerance"] = c.limit_tolerance;
  j["tail_fraction"] = c.tail_fraction;
  j["seed"] = c.seed;
  j["probe"] = c.probe;
  j["num_pairs"] = c.num_pairs;
  j["num_points"] = c.num_points;
  j["grid_size"] = c.grid_size;
  j["adversarial"] = c.adversarial;
  j["mass_threshold"] = c.mass_threshold;
  j["genericity_tol"] = c.genericity_tol;
  j["sampler"] = {{"kind", c.sampler.kind},     {"atoms", c.sampler.atoms},
                  {"weights", c.sampler.weights}, {"base", c.sampler.base},
                  {"burn_in", c.sampler.burn_in}, {"stride", c.sampler.stride}};
  j["deltas"] = c.deltas;
  j["eps_ladder"] = c.eps_ladder;
  j["observable"] = c.observable;
  j["flag_floor"] = c.flag_floor;
  j["suites"] = c.suites;
  j["trials"] = c.trials;
  j["fault_injection"] = c.fault_injection;
  j["bench"] = {{"sorted_max_exp", c.bench.sorted_max_exp},
                {"cyclic_max_exp", c.bench.cyclic_max_exp},
                {"exact_max_exp", c.bench.exact_max_exp},
                {"entropic_max_exp", c.bench.entropic_max_exp},
                {"floor_run", c.bench.floor_run}};
  j["out"] = c.out;
  j["csv_out"] = c.csv_out;
  return j.dump(2);
}

SystemSpec system_from_config(const RunConfig& c) {
  PrecisionPolicy policy;
  if (c.system.max_precision_bits < 1)
    throw ConfigError("max_precision_bits must be positive");
  policy.max_bits = c.system.max_precision_bits;
  bool golden = c.system.golden_alpha && !c.system.param;
  return make_system(family_from_name(c.system.family), c.system.param, golden,
                     c.system.alphabet_size, policy);
}

Schedule schedule_from_config(const RunConfig& c) {
  if (c.schedule.empty()) return geometric_schedule();
  return make_schedule(c.schedule);
}

FnOptions fn_options_from_config(const RunConfig& c) {
  FnOptions f;
  f.solver = solver_kind_from_name(c.solver);
  if (c.exact_threshold < 1) throw ConfigError("exact_threshold must be positive");
  if (c.epsilon <= 0.0) throw ConfigError("epsilon must be positive");
  if (c.max_iters < 1) throw ConfigError("max_iters must be positive");
  f.exact_threshold = c.exact_threshold;
  f.epsilon = c.epsilon;
  f.max_iters = c.max_iters;
  return f;
}

EstimatorOptions estimator_options_from_config(const RunConfig& c) {
  EstimatorOptions e;
  e.fn = fn_options_from_config(c);
  if (c.tail_fraction <= 0.0 || c.tail_fraction > 1.0)
    throw ConfigError("tail_fraction must lie in (0,1]");
  if (c.tol <= 0.0 || c.limit_tolerance <= 0.0)
    throw ConfigError("tolerances must be positive");
  e.tail_fraction = c.tail_fraction;
  e.limit_tolerance = c.limit_tolerance;
  e.membership_tolerance = c.tol;
  return e;
}

SamplerSpec sampler_from_config(const SamplerConfig& c) {
  SamplerSpec s;
  if (c.kind == "lebesgue")
    s.kind = SamplerKind::Lebesgue;
  else if (c.kind == "atomic")
    s.kind = SamplerKind::Atomic;
  else if (c.kind == "orbit-tail")
    s.kind = SamplerKind::OrbitTail;
  else
    throw ConfigError("unknown sampler kind: " + c.kind);
  s.atoms = c.atoms;
  s.weights = c.weights;
  s.base = c.base;
  if (c.burn_in < 0 || c.stride < 1)
    throw ConfigError("sampler needs burn_in >= 0 and stride >= 1");
  s.burn_in = c.burn_in;
  s.stride = c.stride;
  return s;
}

SpacePoint point_from_config(const SystemSpec& spec, const std::string& text,
                             long horizon, Rng& rng) {
  if (text.empty()) throw ConfigError("empty point literal");
  SamplerSpec leb;
  if (text == "random") return sample_point(spec, leb, rng, horizon, 0);
  if (spec.space.kind == SpaceKind::Shift) {
    std::size_t window = static_cast<std::size_t>(horizon) + 66;
    std::vector<std::uint32_t> s(window);
    for (std::size_t i = 0; i < window; ++i) {
      char ch = text[i % text.size()];
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw ConfigError("shift-space points use digit patterns: " + text);
      s[i] = static_cast<std::uint32_t>(ch - '0');
    }
    return make_shift_point(spec.space, std::move(s));
  }
  long prec = required_precision(spec, std::max<long>(horizon, 1)) + 8;
  try {
    return make_point(spec.space, Real::from_string(text, prec));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace orbitdist
