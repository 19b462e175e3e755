#include "orbitdist/config.hpp"
#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

RunConfig base(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

RunConfig props_suite(const std::string& suite) {
  RunConfig c = base("check-props");
  c.suites = {suite};
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"solver-oracle",  "one-d-oracle",       "prop31-suite",
          "prop32-suite",   "prop34-suite",       "thm13-rotation",
          "thm13-doubling", "s1-wme",             "thm15-s1",
          "thm15-doubling", "ergodicity-two-atom", "ergodicity-doubling",
          "physical-doubling", "bench",           "orbit-demo",
          "fseq-rotation"};
}

RunConfig preset_config(const std::string& name) {
  if (name == "solver-oracle") return props_suite("solver-oracle");
  if (name == "one-d-oracle") return props_suite("one-d");
  if (name == "prop31-suite") return props_suite("prop31");
  if (name == "prop32-suite") return props_suite("prop32");
  if (name == "prop34-suite") {
    RunConfig c = props_suite("prop34");
    c.eps_ladder = {0.1, 0.05};
    return c;
  }
  if (name == "thm13-rotation") {
    RunConfig c = base("probe");
    c.probe = "unique-ergodicity";
    c.system.family = "rotation";
    c.num_pairs = 20;
    return c;
  }
  if (name == "thm13-doubling") {
    RunConfig c = base("probe");
    c.probe = "unique-ergodicity";
    c.system.family = "doubling";
    c.num_pairs = 6;
    c.schedule = {512, 1024, 2048, 4096};
    return c;
  }
  if (name == "s1-wme") {
    RunConfig c = base("scan-wme");
    c.system.family = "paper-s1";
    c.deltas = {1e-4, 0.01, 0.1};
    c.schedule = {64, 128, 256, 512, 1024, 2048};
    return c;
  }
  if (name == "thm15-s1") {
    RunConfig c = base("scan-ta");
    c.system.family = "paper-s1";
    c.observable = "coordinate";
    c.deltas = {0.01, 0.05, 0.1};
    return c;
  }
  if (name == "thm15-doubling") {
    RunConfig c = base("scan-ta");
    c.system.family = "doubling";
    c.observable = "coordinate";
    c.deltas = {0.01, 0.05, 0.1};
    c.schedule = {512, 1024, 2048, 4096};
    return c;
  }
  if (name == "ergodicity-two-atom") {
    RunConfig c = base("probe");
    c.probe = "ergodicity";
    c.system.family = "identity";
    c.sampler.kind = "atomic";
    c.sampler.atoms = {"0.2", "0.8"};
    c.sampler.weights = {0.5, 0.5};
    c.num_pairs = 400;
    c.schedule = {64, 128};
    return c;
  }
  if (name == "ergodicity-doubling") {
    RunConfig c = base("probe");
    c.probe = "ergodicity";
    c.system.family = "doubling";
    c.sampler.kind = "lebesgue";
    c.num_pairs = 40;
    c.schedule = {512, 1024, 2048, 4096};
    return c;
  }
  if (name == "physical-doubling") {
    RunConfig c = base("probe");
    c.probe = "physical";
    c.system.family = "doubling";
    c.sampler.kind = "lebesgue";
    c.num_points = 12;
    c.schedule = {512, 1024, 2048, 4096};
    return c;
  }
  if (name == "bench") return base("bench");
  if (name == "orbit-demo") {
    RunConfig c = base("orbit");
    c.system.family = "rotation";
    c.x = "0";
    c.n = 64;
    return c;
  }
  if (name == "fseq-rotation") {
    RunConfig c = base("fseq");
    c.system.family = "rotation";
    c.x = "random";
    c.y = "random";
    return c;
  }
  throw ConfigError("unknown preset: " + name);
}

}  // namespace orbitdist
