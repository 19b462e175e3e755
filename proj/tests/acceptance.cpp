// Release gate: one binary that exercises every promised behavior end to end
// and prints a PASS/FAIL line per item. Exits with the number of failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "orbitdist/analysis.hpp"
#include "orbitdist/commands.hpp"
#include "orbitdist/config.hpp"
#include "orbitdist/errors.hpp"

using namespace orbitdist;

namespace {

int g_failures = 0;
std::string g_dir;

void report(int num, const char* label, bool ok, double secs,
            const std::string& detail) {
  std::printf("[%2d] %s %-22s (%6.2fs) %s\n", num, ok ? "PASS" : "FAIL", label,
              secs, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double secs_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> lebesgue_coords(const SystemSpec& spec, std::uint64_t stream,
                                    int count, long horizon,
                                    std::vector<SpacePoint>* points = nullptr) {
  Rng rng(1, stream);
  long prec = required_precision(spec, horizon) + 8;
  std::vector<double> coords;
  for (int i = 0; i < count; ++i) {
    auto p = make_point(spec.space, rng.unit_real(prec));
    coords.push_back(coordinate_view(p));
    if (points) points->push_back(p);
  }
  return coords;
}

// 1: n <= 8 assignment instances against exhaustive search.
void run_assignment_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1, 0xA1);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    long n = 2 + static_cast<long>(rng.index(7));
    std::vector<double> entries(static_cast<std::size_t>(n * n));
    for (auto& e : entries) e = rng.unit();
    CostMatrix m = cost_matrix_from_entries(n, std::move(entries));
    double a = solve_exact(m).total_cost;
    double b = solve_bruteforce(m).total_cost;
    worst = std::max(worst, std::fabs(a - b) / std::max(1.0, std::fabs(b)));
  }
  double secs = secs_since(t0);
  report(1, "assignment-oracle", worst <= 1e-12 && secs < 10.0, secs,
         "200 instances n=2..8, worst relative diff " + fmt(worst));
}

// 2: metric-specialized solvers against the dense solver.
void run_one_d_solvers() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1, 0xA2);
  double worst = 0.0;
  for (int metric = 0; metric < 2; ++metric) {
    for (int t = 0; t < 50; ++t) {
      long n = 1 + static_cast<long>(rng.index(128));
      std::vector<double> xs(static_cast<std::size_t>(n)),
          ys(static_cast<std::size_t>(n));
      for (auto& v : xs) v = rng.unit();
      for (auto& v : ys) v = rng.unit();
      std::vector<double> entries(static_cast<std::size_t>(n * n));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          entries[static_cast<std::size_t>(i * n + j)] =
              metric ? distance_circle(xs[static_cast<std::size_t>(i)],
                                       ys[static_cast<std::size_t>(j)])
                     : distance_interval(xs[static_cast<std::size_t>(i)],
                                         ys[static_cast<std::size_t>(j)]);
      MatchingResult fast =
          metric ? solve_cyclic_circle(xs, ys) : solve_sorted_line(xs, ys);
      double exact =
          solve_exact(cost_matrix_from_entries(n, std::move(entries))).total_cost;
      worst = std::max(worst, std::fabs(fast.total_cost - exact));
    }
  }
  double secs = secs_since(t0);
  report(2, "one-d-solvers", worst <= 1e-10 && secs < 30.0, secs,
         "50 sets per metric n<=128, worst diff " + fmt(worst));
}

// 3: symmetry and triangle identities across every family.
void run_distance_identities() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1, 0xA3);
  double worst = 0.0;
  long n = 64;
  std::vector<SystemSpec> families = {
      make_system(Family::Identity), make_system(Family::Rotation, std::nullopt, true),
      make_system(Family::Doubling), make_system(Family::Tent, 2.0),
      make_system(Family::Logistic, 4.0), make_system(Family::PaperS1),
      make_system(Family::FullShift)};
  SamplerSpec leb;
  bool all = true;
  for (const auto& spec : families) {
    for (int t = 0; t < 100; ++t) {
      auto x = sample_point(spec, leb, rng, n, 0);
      auto y = sample_point(spec, leb, rng, n, 1);
      auto z = sample_point(spec, leb, rng, n, 2);
      PropertyReport rep = property_check(spec, x, y, z, n);
      worst = std::max({worst, rep.symmetry_violation, rep.triangle_violation});
      all = all && rep.pass;
    }
  }
  double secs = secs_since(t0);
  report(3, "distance-identities", all && worst <= 1e-12 && secs < 60.0, secs,
         "100 triples x 7 families at n=64, worst violation " + fmt(worst));
}

// 4: dropping r+s leading iterates moves F_n by at most (r+s)*diam/n.
void run_start_shift_bound() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1, 0xA4);
  long n = 256;
  std::vector<SystemSpec> families = {
      make_system(Family::Identity), make_system(Family::Rotation, std::nullopt, true),
      make_system(Family::Doubling), make_system(Family::Tent, 2.0),
      make_system(Family::Logistic, 4.0), make_system(Family::PaperS1),
      make_system(Family::FullShift)};
  SamplerSpec leb;
  bool all = true;
  double worst_excess = -1.0;
  for (int t = 0; t < 50; ++t) {
    const auto& spec = families[static_cast<std::size_t>(t) % families.size()];
    long r = static_cast<long>(rng.index(9));
    long s = static_cast<long>(rng.index(static_cast<std::uint64_t>(17 - r)));
    auto x = sample_point(spec, leb, rng, n + r + s, 0);
    auto y = sample_point(spec, leb, rng, n + r + s, 1);
    ShiftInvarianceReport rep = shift_invariance_check(spec, x, y, r, s, n);
    all = all && rep.within_bound;
    worst_excess = std::max(worst_excess, rep.difference - rep.bound);
  }
  double secs = secs_since(t0);
  report(4, "start-shift-bound", all && secs < 60.0, secs,
         "50 quadruples r+s<=16 at n=256, worst excess " + fmt(worst_excess));
}

// 5: the golden rotation puts every sampled pair inside the zero set.
void run_rotation_zero_set() {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = make_system(Family::Rotation, std::nullopt, true);
  std::vector<SpacePoint> pts;
  lebesgue_coords(spec, 0xA5, 40, 4096, &pts);
  double max_f = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto ox = orbit_segment(spec, pts[static_cast<std::size_t>(2 * i)], 4096);
    auto oy = orbit_segment(spec, pts[static_cast<std::size_t>(2 * i + 1)], 4096);
    max_f = std::max(max_f, f_n(ox, oy).mean_cost);
  }
  ProbeOptions opts;
  opts.num_pairs = 20;
  MeasureProbeReport probe = unique_ergodicity_probe(spec, geometric_schedule(), opts);
  double secs = secs_since(t0);
  bool ok = max_f <= 0.01 && probe.verdict.status == Status::Holds && secs < 30.0;
  report(5, "rotation-zero-set", ok, secs,
         "20 pairs, max F_4096 = " + fmt(max_f) + ", probe " +
             status_name(probe.verdict.status));
}

// 6: the doubling map's fixed point sits far from Lebesgue-typical orbits.
void run_doubling_witness() {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = make_system(Family::Doubling);
  auto zero = make_point(spec.space, 0.0);
  Rng rng(1, 0xA6);
  auto y = make_point(spec.space, rng.unit_real(required_precision(spec, 4096) + 8));
  double f = f_n(orbit_segment(spec, zero, 4096), orbit_segment(spec, y, 4096))
                 .mean_cost;
  ProbeOptions opts;
  opts.num_pairs = 6;
  MeasureProbeReport probe =
      unique_ergodicity_probe(spec, make_schedule({512, 1024, 2048, 4096}), opts);
  double secs = secs_since(t0);
  bool ok = f >= 0.22 && f <= 0.28 && probe.verdict.status == Status::Fails &&
            probe.witness.has_value() && secs < 120.0;
  report(6, "doubling-witness", ok, secs,
         "F_4096(0, y) = " + fmt(f) + ", probe " +
             status_name(probe.verdict.status) +
             (probe.witness ? " at pair " + std::to_string(*probe.witness)
                            : " without witness"));
}

// 7: matched distances vanish while aligned gaps persist near the 2-cycle.
void run_s1_weak_vs_mean() {
  auto t0 = std::chrono::steady_clock::now();
  auto spec = make_system(Family::PaperS1);
  std::vector<SpacePoint> pts;
  lebesgue_coords(spec, 0xA7, 40, 2048, &pts);
  double max_f = 0.0;
  for (int i = 0; i < 20; ++i) {
    auto ox = orbit_segment(spec, pts[static_cast<std::size_t>(2 * i)], 2048);
    auto oy = orbit_segment(spec, pts[static_cast<std::size_t>(2 * i + 1)], 2048);
    max_f = std::max(max_f, f_n(ox, oy).mean_cost);
  }
  auto zero = make_point(spec.space, 0.0);
  auto near = make_point(spec.space, Real::from_string("1/10000", 256));
  double gap = mean_gap(spec, zero, near, 2048);
  double secs = secs_since(t0);
  bool ok = max_f <= 0.05 && gap >= 0.1 && secs < 60.0;
  report(7, "s1-weak-vs-mean", ok, secs,
         "20 pairs max F_2048 = " + fmt(max_f) +
             ", aligned gap from radius 1e-4 = " + fmt(gap));
}

// 8: the cell-overlap bound dominates the estimated limit on every pair.
void run_partition_bound() {
  auto t0 = std::chrono::steady_clock::now();
  bool all = true;
  double worst = -1.0;
  for (auto family : {Family::Rotation, Family::PaperS1}) {
    auto spec = family == Family::Rotation
                    ? make_system(Family::Rotation, std::nullopt, true)
                    : make_system(Family::PaperS1);
    std::vector<SpacePoint> pts;
    lebesgue_coords(spec, 0xA8, 10, 4096, &pts);
    for (int i = 0; i < 5; ++i) {
      const auto& x = pts[static_cast<std::size_t>(2 * i)];
      const auto& y = pts[static_cast<std::size_t>(2 * i + 1)];
      FSequence seq = f_sequence(spec, x, y, geometric_schedule());
      double fbar = limit_estimate(seq).fbar_hat;
      for (double eps : {0.1, 0.05}) {
        PartitionCover cover = partition_cover(spec, x, y, 4096, eps);
        double bound = prop34_bound(cover, spec.space.diameter());
        all = all && fbar <= bound + 1e-6;
        worst = std::max(worst, fbar - bound);
      }
    }
  }
  double secs = secs_since(t0);
  report(8, "partition-bound", all && secs < 60.0, secs,
         "2 families x 5 pairs x eps {0.1, 0.05} at n=4096, worst fbar-bound " +
             fmt(worst));
}

// 9: time-average modulus scans separate continuous from discontinuous f*.
void run_average_continuity() {
  auto t0 = std::chrono::steady_clock::now();
  ScanOptions opts;

  auto s1 = make_system(Family::PaperS1);
  ContinuityScan cs1 = ta_continuity_scan(s1, coordinate_observable(s1.space),
                                          {0.01, 0.05, 0.1}, geometric_schedule(),
                                          opts);
  bool s1_ok = !cs1.discontinuity_flag;
  for (std::size_t i = 0; i + 1 < cs1.modulus.size(); ++i)
    s1_ok = s1_ok && cs1.modulus[i] <= cs1.modulus[i + 1] + 1e-15;
  for (double m : cs1.modulus) s1_ok = s1_ok && m <= 0.05;

  auto doubling = make_system(Family::Doubling);
  ContinuityScan cd = ta_continuity_scan(doubling,
                                         coordinate_observable(doubling.space),
                                         {0.01, 0.05, 0.1},
                                         make_schedule({512, 1024, 2048, 4096}),
                                         opts);
  bool d_ok = cd.discontinuity_flag;
  for (double m : cd.modulus) d_ok = d_ok && m >= 0.4;

  double secs = secs_since(t0);
  report(9, "average-continuity", s1_ok && d_ok && secs < 120.0, secs,
         "s1 modulus <= " + fmt(*std::max_element(cs1.modulus.begin(),
                                                  cs1.modulus.end())) +
             " shrinking with the radius; doubling >= " +
             fmt(*std::min_element(cd.modulus.begin(), cd.modulus.end())) +
             " flagged");
}

// 10: sampled zero-set fractions match the mixture combinatorics.
void run_mixture_calibration() {
  auto t0 = std::chrono::steady_clock::now();

  RunConfig two_atom = preset_config("ergodicity-two-atom");
  MeasureProbeReport a =
      ergodicity_probe(system_from_config(two_atom),
                       sampler_from_config(two_atom.sampler),
                       schedule_from_config(two_atom),
                       ProbeOptions{two_atom.num_pairs, two_atom.seed,
                                    estimator_options_from_config(two_atom), true});
  bool atom_ok = a.nf_fraction >= 0.45 && a.nf_fraction <= 0.55;

  RunConfig leb = preset_config("ergodicity-doubling");
  MeasureProbeReport b =
      ergodicity_probe(system_from_config(leb), sampler_from_config(leb.sampler),
                       schedule_from_config(leb),
                       ProbeOptions{leb.num_pairs, leb.seed,
                                    estimator_options_from_config(leb), true});
  bool leb_ok = b.nf_fraction >= 0.9;

  double secs = secs_since(t0);
  report(10, "mixture-calibration", atom_ok && leb_ok && secs < 120.0, secs,
         "two-atom fraction " + fmt(a.nf_fraction) + " (400 pairs); doubling " +
             fmt(b.nf_fraction) + " with abstention " + fmt(b.abstention_rate));
}

// 11: speed floors and the solver-gap column of the timing table.
void run_performance_floor() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(1, 0xAB);

  std::vector<double> xs(1000000), ys(1000000);
  for (auto& v : xs) v = rng.unit();
  for (auto& v : ys) v = rng.unit();
  auto s0 = std::chrono::steady_clock::now();
  solve_sorted_line(xs, ys);
  double sorted_secs = secs_since(s0);

  long n = 512;
  std::vector<double> entries(static_cast<std::size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      entries[static_cast<std::size_t>(i * n + j)] =
          distance_circle(static_cast<double>(i) / 512.0, rng.unit());
  CostMatrix m = cost_matrix_from_entries(n, std::move(entries));
  auto s1 = std::chrono::steady_clock::now();
  solve_exact(m);
  double exact_secs = secs_since(s1);

  RunConfig bench = preset_config("bench");
  bench.out = g_dir + "/bench.json";
  bench.csv_out = g_dir + "/bench.csv";
  int rc = run_command(bench);
  std::string csv = slurp(bench.csv_out);
  std::string json_text = slurp(bench.out);
  bool csv_ok = rc == 0 &&
                csv.rfind("solver,n,seconds,mean_cost,gap\n", 0) == 0 &&
                csv.find("sorted-line,1000000,") != std::string::npos &&
                csv.find("entropic,512,") != std::string::npos;
  // every entropic row's deviation from the dense optimum obeys its own bound
  bool gap_ok = true;
  std::regex row(
      "\\{[^{}]*\"gap\": ([0-9.e+-]+)[^{}]*\"versus_exact\": (-?[0-9.e+-]+)[^{}]*\\}");
  auto begin = std::sregex_iterator(json_text.begin(), json_text.end(), row);
  int entropic_rows = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    ++entropic_rows;
    double gap = std::stod((*it)[1]);
    double diff = std::stod((*it)[2]);
    gap_ok = gap_ok && std::fabs(diff) <= gap + 1e-12;
  }
  double secs = secs_since(t0);
  bool ok = sorted_secs < 1.0 && exact_secs < 5.0 && csv_ok && gap_ok &&
            entropic_rows >= 4;
  report(11, "performance-floor", ok, secs,
         "sorted n=1e6 in " + fmt(sorted_secs) + "s, dense n=512 in " +
             fmt(exact_secs) + "s, " + std::to_string(entropic_rows) +
             " entropic rows within gap");
}

// 12: rerunning a preset reproduces every byte except wall-clock fields.
void run_determinism() {
  auto t0 = std::chrono::steady_clock::now();
  const std::regex wall("\"(wall_time_seconds|seconds)\": [^,\n]*");
  std::vector<std::string> presets = {
      "orbit-demo",        "fseq-rotation",  "thm13-rotation",
      "s1-wme",            "thm15-doubling", "solver-oracle",
      "ergodicity-two-atom", "physical-doubling", "bench"};
  bool all = true;
  std::string mismatches;
  for (const auto& name : presets) {
    std::string payloads[2];
    for (int round = 0; round < 2; ++round) {
      RunConfig c = preset_config(name);
      c.out = g_dir + "/" + name + ".json";
      c.csv_out = g_dir + "/" + name + ".csv";
      run_command(c);
      std::string text = slurp(c.out);
      if (c.command == "bench" || c.command == "orbit") {
        // bench CSVs carry a timing column; orbit reuses the csv path
        std::string csv = slurp(c.csv_out);
        if (c.command == "bench") {
          std::istringstream in(csv);
          std::ostringstream masked;
          std::string line;
          while (std::getline(in, line)) {
            auto p1 = line.find(','), p2 = line.find(',', p1 + 1),
                 p3 = line.find(',', p2 + 1);
            if (p3 != std::string::npos)
              line = line.substr(0, p2 + 1) + "#" + line.substr(p3);
            masked << line << "\n";
          }
          csv = masked.str();
        }
        text += csv;
      }
      payloads[round] = std::regex_replace(text, wall, "\"$1\": #");
    }
    if (payloads[0] != payloads[1]) {
      all = false;
      mismatches += " " + name;
    }
  }
  double secs = secs_since(t0);
  report(12, "determinism", all, secs,
         all ? std::to_string(presets.size()) +
                   " presets spanning all commands re-ran byte-identically"
             : "mismatched presets:" + mismatches);
}

}  // namespace

int main() {
  char tmpl[] = "/tmp/orbitdist-acceptance-XXXXXX";
  const char* dir = mkdtemp(tmpl);
  if (!dir) {
    std::fprintf(stderr, "cannot create scratch directory\n");
    return 99;
  }
  g_dir = dir;
  run_assignment_oracle();
  run_one_d_solvers();
  run_distance_identities();
  run_start_shift_bound();
  run_rotation_zero_set();
  run_doubling_witness();
  run_s1_weak_vs_mean();
  run_partition_bound();
  run_average_continuity();
  run_mixture_calibration();
  run_performance_floor();
  run_determinism();
  if (g_failures == 0)
    std::printf("all 12 acceptance checks passed\n");
  else
    std::printf("%d acceptance check(s) failed\n", g_failures);
  return g_failures;
}
