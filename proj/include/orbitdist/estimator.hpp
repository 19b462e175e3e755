#pragma once

#include <string>
#include <vector>

#include "orbitdist/observables.hpp"
#include "orbitdist/solvers.hpp"
#include "orbitdist/system.hpp"

namespace orbitdist {

struct Schedule {
  std::vector<long> horizons;  // strictly increasing, all >= 1
};

Schedule geometric_schedule(int min_exp = 6, int max_exp = 12);  // 2^6..2^12
Schedule make_schedule(std::vector<long> horizons);

struct FSequence {
  Schedule schedule;
  std::vector<double> values;       // F_n per horizon
  std::vector<std::string> solver_tags;
  std::vector<double> gap_bounds;
};

struct EstimatorOptions {
  FnOptions fn;
  double tail_fraction = 0.5;    // trailing share of the schedule
  double limit_tolerance = 0.01; // convergence: tail spread <= this
  double membership_tolerance = 0.05;
};

// F_n across the schedule. Orbits are generated once at the largest horizon
// and prefix windows are reused.
FSequence f_sequence(const SystemSpec& spec, const SpacePoint& x,
                     const SpacePoint& y, const Schedule& schedule,
                     const FnOptions& opts = {});

struct LimitEstimate {
  double fbar_hat = 0.0;    // max over the tail window
  double funder_hat = 0.0;  // min over the tail window
  double spread = 0.0;
  bool converged = false;
  double tolerance = 0.01;
  double tail_fraction = 0.5;
  std::size_t tail_start = 0;  // index into the schedule
};

LimitEstimate limit_estimate(const FSequence& seq, double tail_fraction = 0.5,
                             double tolerance = 0.01);

enum class Status { Holds, Fails, Inconclusive };
std::string status_name(Status s);

struct Verdict {
  Status status = Status::Inconclusive;
  double margin = 0.0;
  std::string diagnostics;
};

struct MembershipReport {
  Verdict verdict;
  FSequence sequence;
  LimitEstimate estimate;
  double gap_allowance = 0.0;  // max tail solver gap folded into the verdict
};

// Is (x,y) in the zero set of F, at tolerance? Holds needs convergence and
// fbar_hat + gap <= tol; fails needs funder_hat - gap > tol (which also
// certifies the pair outside the liminf zero set); else inconclusive.
MembershipReport nf_membership(const SystemSpec& spec, const SpacePoint& x,
                               const SpacePoint& y, const Schedule& schedule,
                               const EstimatorOptions& opts = {});

struct TimeAverageReport {
  std::string observable;
  Schedule schedule;
  std::vector<double> partial_means;  // Cesaro means at each horizon
  double fstar_hat = 0.0;             // mean at the largest horizon
  double oscillation = 0.0;           // max - min over the tail window
};

TimeAverageReport time_average(const SystemSpec& spec, const SpacePoint& x,
                               const Observable& f, const Schedule& schedule,
                               double tail_fraction = 0.5);

struct GenericityReport {
  Verdict verdict;
  std::vector<TimeAverageReport> reports;
  std::string worst_observable;
};

// Generic-point probe: every battery observable's tail oscillation <= tol
// holds; any oscillation > 3*tol with a non-monotone tail (two subsequences
// trending opposite ways) fails; otherwise inconclusive.
GenericityReport generic_probe(const SystemSpec& spec, const SpacePoint& x,
                               const std::vector<Observable>& battery,
                               const Schedule& schedule, double tol = 0.05,
                               double tail_fraction = 0.5);

// Cesaro mean of d(T^k x, T^k y), k = 1..n: the non-permuted contrast.
double mean_gap(const SystemSpec& spec, const SpacePoint& x, const SpacePoint& y,
                long n);
std::vector<double> mean_gap_sequence(const SystemSpec& spec, const SpacePoint& x,
                                      const SpacePoint& y, const Schedule& schedule);

struct ShiftInvarianceReport {
  double f_base = 0.0;      // F_n(x, y)
  double f_shifted = 0.0;   // F_n(T^r x, T^s y)
  double difference = 0.0;
  double bound = 0.0;       // (r+s) * diameter / n + 1e-9
  bool within_bound = false;
};

ShiftInvarianceReport shift_invariance_check(const SystemSpec& spec,
                                             const SpacePoint& x,
                                             const SpacePoint& y, long r, long s,
                                             long n, const FnOptions& opts = {});

struct PropertyReport {
  // f_n over the six ordered pairs of {x,y,z}
  double f_xy = 0.0, f_yx = 0.0, f_xz = 0.0, f_zx = 0.0, f_yz = 0.0, f_zy = 0.0;
  double symmetry_violation = 0.0;  // max |f(a,b) - f(b,a)|
  double triangle_violation = 0.0;  // max positive part over the 3 triangles
  bool pass = false;
  double tolerance = 1e-12;
};

// Finite-n symmetry and triangle identities at one horizon.
PropertyReport property_check(const SystemSpec& spec, const SpacePoint& x,
                              const SpacePoint& y, const SpacePoint& z, long n,
                              const FnOptions& opts = {}, double tol = 1e-12);

}  // namespace orbitdist
