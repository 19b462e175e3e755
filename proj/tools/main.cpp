#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "orbitdist/commands.hpp"
#include "orbitdist/config.hpp"
#include "orbitdist/errors.hpp"

namespace {

struct FlagSet {
  std::string config_path;
  std::string preset;
  std::uint64_t seed = 0;
  std::string out;
  std::string csv_out;
  std::string solver;
  long n = 0;
  double tol = 0.0;
  CLI::Option* o_config = nullptr;
  CLI::Option* o_preset = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_out = nullptr;
  CLI::Option* o_csv = nullptr;
  CLI::Option* o_solver = nullptr;
  CLI::Option* o_n = nullptr;
  CLI::Option* o_tol = nullptr;
};

void add_common_flags(CLI::App* sub, FlagSet& f) {
  f.o_config = sub->add_option("--config", f.config_path,
                               "JSON run configuration (see README for schema)");
  f.o_preset = sub->add_option("--preset", f.preset,
                               "named built-in configuration (see `presets`)");
  f.o_seed = sub->add_option("--seed", f.seed, "RNG seed override");
  f.o_out = sub->add_option("--out", f.out, "report path (default: stdout)");
  f.o_csv = sub->add_option("--csv-out", f.csv_out, "CSV table path");
  f.o_solver = sub->add_option(
      "--solver", f.solver, "auto|exact|bruteforce|sorted|cyclic|entropic");
  f.o_n = sub->add_option("--n", f.n, "orbit segment length override");
  f.o_tol = sub->add_option("--tol", f.tol, "membership tolerance override");
}

orbitdist::RunConfig resolve_config(const std::string& command, const FlagSet& f) {
  using orbitdist::ConfigError;
  orbitdist::RunConfig c;
  if (*f.o_preset && *f.o_config)
    throw ConfigError("--preset and --config are mutually exclusive");
  if (*f.o_preset) {
    c = orbitdist::preset_config(f.preset);
    if (c.command != command)
      throw ConfigError("preset '" + f.preset + "' belongs to command '" +
                        c.command + "', not '" + command + "'");
  } else if (*f.o_config) {
    c = orbitdist::config_from_file(f.config_path);
    if (!c.command.empty() && c.command != command)
      throw ConfigError("config file names command '" + c.command +
                        "', not '" + command + "'");
  }
  c.command = command;
  if (*f.o_seed) c.seed = f.seed;
  if (*f.o_out) c.out = f.out;
  if (*f.o_csv) c.csv_out = f.csv_out;
  if (*f.o_solver) c.solver = f.solver;
  if (*f.o_n) c.n = f.n;
  if (*f.o_tol) c.tol = f.tol;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit-distance toolkit: permutation-infimum distances between "
               "orbit segments, limit estimates, and measure-theoretic probes"};
  app.set_version_flag("--version", orbitdist::kToolVersion);
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"orbit", "emit an orbit segment as CSV (index,coordinate)"},
      {"fdist", "distance between two orbit segments at one horizon"},
      {"fseq", "distance sequence along a horizon schedule + limit estimate"},
      {"scan-wme", "weak-mean-equicontinuity modulus scan over a delta ladder"},
      {"scan-ta", "time-average continuity scan for an observable"},
      {"probe", "unique-ergodicity / ergodicity / physical-measure probe"},
      {"check-props", "solver oracles and distance-identity suites"},
      {"bench", "solver timing table (solver,n,seconds,mean_cost,gap)"},
  };
  std::map<std::string, FlagSet> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    add_common_flags(sub, flags[name]);
    subs[name] = sub;
  }
  CLI::App* presets = app.add_subcommand("presets", "list built-in presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (presets->parsed()) {
      for (const auto& name : orbitdist::preset_names())
        std::cout << name << "  (" << orbitdist::preset_config(name).command
                  << ")\n";
      return 0;
    }
    for (const auto& [name, sub] : subs)
      if (sub->parsed())
        return orbitdist::run_command(resolve_config(name, flags[name]));
    std::cerr << "error: no command given\n";
    return 2;
  } catch (const orbitdist::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const orbitdist::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
