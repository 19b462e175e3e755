#include "orbitdist/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json verdict_to_json(const Verdict& v) {
  return {{"status", status_name(v.status)},
          {"margin", v.margin},
          {"diagnostics", v.diagnostics}};
}

json estimate_to_json(const LimitEstimate& e) {
  return {{"fbar_hat", e.fbar_hat},
          {"funder_hat", e.funder_hat},
          {"spread", e.spread},
          {"converged", e.converged},
          {"tolerance", e.tolerance},
          {"tail_fraction", e.tail_fraction},
          {"tail_start", e.tail_start}};
}

json probe_report_to_json(const MeasureProbeReport& rep) {
  json pairs = json::array();
  for (const auto& p : rep.pairs)
    pairs.push_back({{"index", p.index},
                     {"status", status_name(p.verdict.status)},
                     {"margin", p.verdict.margin},
                     {"fbar_hat", p.fbar_hat},
                     {"funder_hat", p.funder_hat},
                     {"spread", p.spread},
                     {"x", p.x_coord},
                     {"y", p.y_coord}});
  json clusters = json::array();
  for (const auto& c : rep.clusters)
    clusters.push_back({{"members", c.members},
                        {"mass", c.mass},
                        {"representative", c.representative},
                        {"fingerprint", c.fingerprint}});
  return {{"probe", rep.probe},
          {"verdict", verdict_to_json(rep.verdict)},
          {"nf_fraction", rep.nf_fraction},
          {"abstention_rate", rep.abstention_rate},
          {"consistent_flag", rep.consistent_flag},
          {"witness", rep.witness ? json(*rep.witness) : json(nullptr)},
          {"num_generic", rep.num_generic},
          {"pairs", pairs},
          {"clusters", clusters}};
}

void write_report(const RunConfig& c, json results,
                  std::chrono::steady_clock::time_point t0) {
  json report;
  report["schema_version"] = kSchemaVersion;
  report["tool_version"] = kToolVersion;
  report["command"] = c.command;
  report["config"] = json::parse(config_to_json_text(c));
  report["results"] = std::move(results);
  report["wall_time_seconds"] = elapsed_seconds(t0);
  write_text_output(c.out, report.dump(2) + "\n");
}

// Deterministic parse order for the point literals of one run.
struct PointParser {
  const SystemSpec& spec;
  long horizon;
  Rng rng;
  PointParser(const SystemSpec& s, std::uint64_t seed, long h)
      : spec(s), horizon(h), rng(seed, 0xA0) {}
  SpacePoint operator()(const std::string& text) {
    return point_from_config(spec, text, horizon, rng);
  }
};

int cmd_orbit(const RunConfig& c) {
  SystemSpec spec = system_from_config(c);
  if (c.n < 1) throw ConfigError("n must be >= 1");
  if (c.start_index < 0) throw ConfigError("start_index must be >= 0");
  PointParser parse(spec, c.seed, c.start_index + c.n - 1);
  SpacePoint x = parse(c.x);
  OrbitSegment seg = orbit_segment(spec, x, c.n, c.start_index);
  Observable coord = coordinate_observable(spec.space);
  std::ostringstream csv;
  csv << "index,coordinate\n";
  for (long j = 0; j < seg.length; ++j) {
    double v = spec.space.kind == SpaceKind::Shift
                   ? coord.eval(seg.points[static_cast<std::size_t>(j)])
                   : seg.coords()[static_cast<std::size_t>(j)];
    csv << c.start_index + j << "," << fmt17(v) << "\n";
  }
  write_text_output(c.csv_out.empty() ? c.out : c.csv_out, csv.str());
  return 0;
}

int cmd_fdist(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  SystemSpec spec = system_from_config(c);
  if (c.n < 1) throw ConfigError("n must be >= 1");
  PointParser parse(spec, c.seed, c.n);
  SpacePoint x = parse(c.x), y = parse(c.y);
  OrbitSegment ox = orbit_segment(spec, x, c.n), oy = orbit_segment(spec, y, c.n);
  MatchingResult r = f_n(ox, oy, fn_options_from_config(c));
  write_report(c,
               {{"n", c.n},
                {"solver", r.solver},
                {"mean_cost", r.mean_cost},
                {"total_cost", r.total_cost},
                {"certified_optimal", r.certified_optimal},
                {"gap_bound", r.gap_bound},
                {"converged", r.converged},
                {"orbit_error_bound", std::max(ox.error_bound, oy.error_bound)},
                {"precision_bits_used", std::max(ox.precision_bits_used,
                                                 oy.precision_bits_used)}},
               t0);
  return 0;
}

int cmd_fseq(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  SystemSpec spec = system_from_config(c);
  Schedule sched = schedule_from_config(c);
  EstimatorOptions est = estimator_options_from_config(c);
  PointParser parse(spec, c.seed, sched.horizons.back());
  SpacePoint x = parse(c.x), y = parse(c.y);
  FSequence seq = f_sequence(spec, x, y, sched, est.fn);
  LimitEstimate lim = limit_estimate(seq, est.tail_fraction, est.limit_tolerance);
  write_report(c,
               {{"schedule", sched.horizons},
                {"values", seq.values},
                {"solver_tags", seq.solver_tags},
                {"gap_bounds", seq.gap_bounds},
                {"estimate", estimate_to_json(lim)}},
               t0);
  return 0;
}

int cmd_scan_wme(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  SystemSpec spec = system_from_config(c);
  Schedule sched = schedule_from_config(c);
  ScanOptions opts;
  opts.grid_size = c.grid_size;
  opts.seed = c.seed;
  opts.est = estimator_options_from_config(c);
  EquicontinuityScan scan = wme_scan(spec, c.deltas, sched, opts);
  if (!c.csv_out.empty()) {
    std::ostringstream csv;
    csv << "delta,modulus,contrast_modulus,raw_modulus,raw_contrast\n";
    for (std::size_t i = 0; i < scan.deltas.size(); ++i)
      csv << fmt17(scan.deltas[i]) << "," << fmt17(scan.modulus[i]) << ","
          << fmt17(scan.contrast_modulus[i]) << "," << fmt17(scan.raw_modulus[i])
          << "," << fmt17(scan.raw_contrast[i]) << "\n";
    write_text_output(c.csv_out, csv.str());
  }
  write_report(c,
               {{"deltas", scan.deltas},
                {"modulus", scan.modulus},
                {"contrast_modulus", scan.contrast_modulus},
                {"raw_modulus", scan.raw_modulus},
                {"raw_contrast", scan.raw_contrast}},
               t0);
  return 0;
}

int cmd_scan_ta(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  SystemSpec spec = system_from_config(c);
  Schedule sched = schedule_from_config(c);
  ScanOptions opts;
  opts.grid_size = c.grid_size;
  opts.seed = c.seed;
  opts.est = estimator_options_from_config(c);
  Observable f = battery_observable(spec.space, c.observable);
  ContinuityScan scan = ta_continuity_scan(spec, f, c.deltas, sched, opts, c.flag_floor);
  if (!c.csv_out.empty()) {
    std::ostringstream csv;
    csv << "delta,modulus,raw_modulus\n";
    for (std::size_t i = 0; i < scan.deltas.size(); ++i)
      csv << fmt17(scan.deltas[i]) << "," << fmt17(scan.modulus[i]) << ","
          << fmt17(scan.raw_modulus[i]) << "\n";
    write_text_output(c.csv_out, csv.str());
  }
  write_report(c,
               {{"observable", scan.observable},
                {"deltas", scan.deltas},
                {"modulus", scan.modulus},
                {"raw_modulus", scan.raw_modulus},
                {"discontinuity_flag", scan.discontinuity_flag},
                {"flag_floor", scan.flag_floor}},
               t0);
  return 0;
}

int cmd_probe(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  SystemSpec spec = system_from_config(c);
  Schedule sched = schedule_from_config(c);
  MeasureProbeReport rep;
  if (c.probe == "unique-ergodicity") {
    ProbeOptions opts;
    opts.num_pairs = c.num_pairs;
    opts.seed = c.seed;
    opts.est = estimator_options_from_config(c);
    opts.adversarial = c.adversarial;
    rep = unique_ergodicity_probe(spec, sched, opts);
  } else if (c.probe == "ergodicity") {
    ProbeOptions opts;
    opts.num_pairs = c.num_pairs;
    opts.seed = c.seed;
    opts.est = estimator_options_from_config(c);
    opts.adversarial = c.adversarial;
    rep = ergodicity_probe(spec, sampler_from_config(c.sampler), sched, opts);
  } else if (c.probe == "physical") {
    PhysicalOptions opts;
    opts.num_points = c.num_points;
    opts.mass_threshold = c.mass_threshold;
    opts.seed = c.seed;
    opts.est = estimator_options_from_config(c);
    opts.genericity_tol = c.genericity_tol;
    rep = physical_probe(spec, sampler_from_config(c.sampler), sched, opts);
  } else {
    throw ConfigError("unknown probe: " + c.probe);
  }
  write_report(c, probe_report_to_json(rep), t0);
  return rep.verdict.status == Status::Fails ? 1 : 0;
}

// ---- check-props suites ----------------------------------------------------

long capped(long spec_default, long trials) {
  return trials > 0 ? std::min(spec_default, trials) : spec_default;
}

std::vector<SystemSpec> family_catalog() {
  return {make_system(Family::Identity),
          make_system(Family::Rotation, std::nullopt, true),
          make_system(Family::Doubling),
          make_system(Family::Tent, 2.0),
          make_system(Family::Logistic, 4.0),
          make_system(Family::PaperS1),
          make_system(Family::FullShift)};
}

SpacePoint random_point(const SystemSpec& spec, Rng& rng, long horizon) {
  SamplerSpec leb;
  return sample_point(spec, leb, rng, horizon, 0);
}

json suite_solver_oracle(const RunConfig& c, bool& passed) {
  Rng rng(c.seed, 0x51);
  long trials = capped(200, c.trials);
  double worst = 0.0;
  json violations = json::array();
  for (long t = 0; t < trials; ++t) {
    long n = 2 + static_cast<long>(rng.index(7));  // 2..8
    std::vector<double> entries(static_cast<std::size_t>(n * n));
    for (auto& e : entries) e = rng.unit();
    CostMatrix m = cost_matrix_from_entries(n, std::move(entries));
    MatchingResult a = solve_exact(m), b = solve_bruteforce(m);
    double rel = std::fabs(a.total_cost - b.total_cost) /
                 std::max(1.0, std::fabs(b.total_cost));
    worst = std::max(worst, rel);
    if (rel > 1e-12)
      violations.push_back({{"identity", "solver-oracle"},
                            {"trial", t},
                            {"n", n},
                            {"violation", rel}});
  }
  passed = violations.empty();
  return {{"name", "solver-oracle"},
          {"trials", trials},
          {"worst_relative_difference", worst},
          {"violations", violations},
          {"passed", passed}};
}

json suite_one_d(const RunConfig& c, bool& passed) {
  Rng rng(c.seed, 0x1D);
  long trials = capped(50, c.trials);
  double worst = 0.0;
  json violations = json::array();
  for (int metric = 0; metric < 2; ++metric) {
    bool circle = metric == 1;
    for (long t = 0; t < trials; ++t) {
      long n = 1 + static_cast<long>(rng.index(128));  // 1..128
      std::vector<double> xs(static_cast<std::size_t>(n)),
          ys(static_cast<std::size_t>(n));
      for (auto& v : xs) v = rng.unit();
      for (auto& v : ys) v = rng.unit();
      std::vector<double> entries(static_cast<std::size_t>(n * n));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          entries[static_cast<std::size_t>(i * n + j)] =
              circle ? distance_circle(xs[static_cast<std::size_t>(i)],
                                       ys[static_cast<std::size_t>(j)])
                     : distance_interval(xs[static_cast<std::size_t>(i)],
                                         ys[static_cast<std::size_t>(j)]);
      CostMatrix m = cost_matrix_from_entries(n, std::move(entries));
      MatchingResult fast = circle ? solve_cyclic_circle(xs, ys)
                                   : solve_sorted_line(xs, ys);
      MatchingResult exact = solve_exact(m);
      double diff = std::fabs(fast.total_cost - exact.total_cost);
      worst = std::max(worst, diff);
      if (diff > 1e-10)
        violations.push_back({{"identity", circle ? "cyclic-vs-exact" : "sorted-vs-exact"},
                              {"trial", t},
                              {"n", n},
                              {"violation", diff}});
    }
  }
  passed = violations.empty();
  return {{"name", "one-d"},
          {"trials_per_metric", trials},
          {"worst_difference", worst},
          {"violations", violations},
          {"passed", passed}};
}

json suite_prop31(const RunConfig& c, bool& passed) {
  Rng rng(c.seed, 0x31);
  long trials = capped(100, c.trials);
  long n = 64;
  double worst_sym = 0.0, worst_tri = 0.0;
  json violations = json::array();
  bool injected = c.fault_injection == "corrupt-cost";
  for (const auto& spec : family_catalog()) {
    std::string fam = family_name(spec.family);
    for (long t = 0; t < trials; ++t) {
      SpacePoint x = random_point(spec, rng, n);
      SpacePoint y = random_point(spec, rng, n);
      SpacePoint z = random_point(spec, rng, n);
      if (injected) {
        // corrupt every entry of the first cost row before solving: any
        // perfect matching pays the corruption exactly once, so the symmetry
        // comparison against the clean transposed matrix must detect it
        OrbitSegment ox = orbit_segment(spec, x, n), oy = orbit_segment(spec, y, n);
        CostMatrix cxy = cost_matrix(ox, oy), cyx = cost_matrix(oy, ox);
        for (long j = 0; j < cxy.n; ++j)
          cxy.entries[static_cast<std::size_t>(j)] += 0.1;
        double sym = std::fabs(solve_exact(cxy).mean_cost - solve_exact(cyx).mean_cost);
        worst_sym = std::max(worst_sym, sym);
        violations.push_back({{"identity", "symmetry"},
                              {"family", fam},
                              {"trial", t},
                              {"violation", sym},
                              {"injected", true}});
        injected = false;  // one injection is enough to prove detection
        continue;
      }
      PropertyReport rep = property_check(spec, x, y, z, n);
      worst_sym = std::max(worst_sym, rep.symmetry_violation);
      worst_tri = std::max(worst_tri, rep.triangle_violation);
      if (!rep.pass) {
        if (rep.symmetry_violation > rep.tolerance)
          violations.push_back({{"identity", "symmetry"},
                                {"family", fam},
                                {"trial", t},
                                {"violation", rep.symmetry_violation}});
        if (rep.triangle_violation > rep.tolerance)
          violations.push_back({{"identity", "triangle"},
                                {"family", fam},
                                {"trial", t},
                                {"violation", rep.triangle_violation}});
      }
    }
  }
  passed = violations.empty();
  return {{"name", "prop31"},
          {"trials_per_family", trials},
          {"n", n},
          {"worst_symmetry_violation", worst_sym},
          {"worst_triangle_violation", worst_tri},
          {"violations", violations},
          {"passed", passed}};
}

json suite_prop32(const RunConfig& c, bool& passed) {
  Rng rng(c.seed, 0x32);
  long trials = capped(50, c.trials);
  long n = 256;
  auto catalog = family_catalog();
  double worst_excess = -1.0;
  json violations = json::array();
  for (long t = 0; t < trials; ++t) {
    const SystemSpec& spec = catalog[static_cast<std::size_t>(t) % catalog.size()];
    long r = static_cast<long>(rng.index(9));       // 0..8
    long s = static_cast<long>(rng.index(static_cast<std::uint64_t>(17 - r)));
    long horizon = n + r + s;
    SpacePoint x = random_point(spec, rng, horizon);
    SpacePoint y = random_point(spec, rng, horizon);
    ShiftInvarianceReport rep = shift_invariance_check(spec, x, y, r, s, n);
    worst_excess = std::max(worst_excess, rep.difference - rep.bound);
    if (!rep.within_bound)
      violations.push_back({{"identity", "shift-bound"},
                            {"family", family_name(spec.family)},
                            {"trial", t},
                            {"r", r},
                            {"s", s},
                            {"difference", rep.difference},
                            {"bound", rep.bound}});
  }
  passed = violations.empty();
  return {{"name", "prop32"},
          {"trials", trials},
          {"n", n},
          {"worst_excess_over_bound", worst_excess},
          {"violations", violations},
          {"passed", passed}};
}

json suite_prop34(const RunConfig& c, bool& passed) {
  Rng rng(c.seed, 0x34);
  long pairs = capped(5, c.trials);
  json violations = json::array();
  json rows = json::array();
  std::vector<SystemSpec> systems = {make_system(Family::Rotation, std::nullopt, true),
                                     make_system(Family::PaperS1)};
  std::vector<long> horizons = {2048, 4096};
  for (const auto& spec : systems) {
    for (long p = 0; p < pairs; ++p) {
      SpacePoint x = random_point(spec, rng, horizons.back());
      SpacePoint y = random_point(spec, rng, horizons.back());
      for (long n : horizons) {
        OrbitSegment ox = orbit_segment(spec, x, n), oy = orbit_segment(spec, y, n);
        double f = f_n(ox, oy).mean_cost;
        for (double eps : c.eps_ladder) {
          PartitionCover cover = partition_cover(spec, x, y, n, eps);
          double bound = prop34_bound(cover, spec.space.diameter());
          rows.push_back({{"family", family_name(spec.family)},
                          {"pair", p},
                          {"n", n},
                          {"eps", eps},
                          {"f_n", f},
                          {"covered_mass", cover.covered_mass},
                          {"bound", bound}});
          if (f > bound + 1e-6)
            violations.push_back({{"identity", "partition-bound"},
                                  {"family", family_name(spec.family)},
                                  {"pair", p},
                                  {"n", n},
                                  {"eps", eps},
                                  {"f_n", f},
                                  {"bound", bound}});
        }
      }
    }
  }
  passed = violations.empty();
  return {{"name", "prop34"},
          {"pairs_per_system", pairs},
          {"rows", rows},
          {"violations", violations},
          {"passed", passed}};
}

int cmd_check_props(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> suites = c.suites;
  if (suites.empty())
    suites = {"solver-oracle", "one-d", "prop31", "prop32", "prop34"};
  if (!c.fault_injection.empty() && c.fault_injection != "corrupt-cost")
    throw ConfigError("unknown fault injection: " + c.fault_injection);
  if (c.fault_injection == "corrupt-cost" &&
      std::find(suites.begin(), suites.end(), "prop31") == suites.end())
    throw ConfigError("corrupt-cost injection needs the prop31 suite");
  json suite_reports = json::array();
  bool all_passed = true;
  for (const auto& name : suites) {
    bool passed = false;
    if (name == "solver-oracle")
      suite_reports.push_back(suite_solver_oracle(c, passed));
    else if (name == "one-d")
      suite_reports.push_back(suite_one_d(c, passed));
    else if (name == "prop31")
      suite_reports.push_back(suite_prop31(c, passed));
    else if (name == "prop32")
      suite_reports.push_back(suite_prop32(c, passed));
    else if (name == "prop34")
      suite_reports.push_back(suite_prop34(c, passed));
    else
      throw ConfigError("unknown suite: " + name);
    all_passed = all_passed && passed;
  }
  write_report(c, {{"suites", suite_reports}, {"all_passed", all_passed}}, t0);
  return all_passed ? 0 : 1;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const RunConfig& c) {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(c.seed, 0xBE);
  json rows = json::array();
  std::ostringstream csv;
  csv << "solver,n,seconds,mean_cost,gap\n";
  auto emit = [&](const std::string& solver, long n, double secs, double mean,
                  double gap, json extra) {
    csv << solver << "," << n << "," << fmt17(secs) << "," << fmt17(mean) << ","
        << fmt17(gap) << "\n";
    json row = {{"solver", solver}, {"n", n},     {"seconds", secs},
                {"mean_cost", mean}, {"gap", gap}};
    if (extra.is_object()) row.update(extra);
    rows.push_back(std::move(row));
  };
  auto rand_pts = [&](long n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.unit();
    return v;
  };

  std::vector<long> sorted_ns;
  for (int e = 6; e <= c.bench.sorted_max_exp; ++e) sorted_ns.push_back(1L << e);
  if (c.bench.floor_run) sorted_ns.push_back(1000000);
  for (long n : sorted_ns) {
    auto xs = rand_pts(n), ys = rand_pts(n);
    auto s0 = std::chrono::steady_clock::now();
    MatchingResult r = solve_sorted_line(xs, ys);
    emit("sorted-line", n, elapsed_seconds(s0), r.mean_cost, r.gap_bound, {});
  }
  for (int e = 6; e <= c.bench.cyclic_max_exp; ++e) {
    long n = 1L << e;
    auto xs = rand_pts(n), ys = rand_pts(n);
    auto s0 = std::chrono::steady_clock::now();
    MatchingResult r = solve_cyclic_circle(xs, ys);
    emit("cyclic-circle", n, elapsed_seconds(s0), r.mean_cost, r.gap_bound, {});
  }
  int dense_max = std::max(c.bench.exact_max_exp, c.bench.entropic_max_exp);
  for (int e = 6; e <= dense_max; ++e) {
    long n = 1L << e;
    auto xs = rand_pts(n), ys = rand_pts(n);
    std::vector<double> entries(static_cast<std::size_t>(n * n));
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        entries[static_cast<std::size_t>(i * n + j)] =
            distance_circle(xs[static_cast<std::size_t>(i)],
                            ys[static_cast<std::size_t>(j)]);
    CostMatrix m = cost_matrix_from_entries(n, std::move(entries));
    double exact_mean = 0.0;
    bool have_exact = e <= c.bench.exact_max_exp;
    if (have_exact) {
      auto s0 = std::chrono::steady_clock::now();
      MatchingResult r = solve_exact(m);
      exact_mean = r.mean_cost;
      emit("exact", n, elapsed_seconds(s0), r.mean_cost, r.gap_bound, {});
    }
    if (e <= c.bench.entropic_max_exp) {
      auto s0 = std::chrono::steady_clock::now();
      MatchingResult r = solve_entropic(m, c.epsilon, c.max_iters);
      json extra = {{"converged", r.converged}};
      if (have_exact) extra["versus_exact"] = r.mean_cost - exact_mean;
      emit("entropic", n, elapsed_seconds(s0), r.mean_cost, r.gap_bound,
           std::move(extra));
    }
  }
  if (!c.csv_out.empty()) write_text_output(c.csv_out, csv.str());
  write_report(c, {{"rows", rows}}, t0);
  return 0;
}

}  // namespace

void write_text_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ConfigError("cannot move output into place: " + path);
  }
}

int run_command(const RunConfig& config) {
  const std::string& cmd = config.command;
  if (cmd == "orbit") return cmd_orbit(config);
  if (cmd == "fdist") return cmd_fdist(config);
  if (cmd == "fseq") return cmd_fseq(config);
  if (cmd == "scan-wme") return cmd_scan_wme(config);
  if (cmd == "scan-ta") return cmd_scan_ta(config);
  if (cmd == "probe") return cmd_probe(config);
  if (cmd == "check-props") return cmd_check_props(config);
  if (cmd == "bench") return cmd_bench(config);
  throw ConfigError("unknown command: " + cmd);
}

}  // namespace orbitdist
