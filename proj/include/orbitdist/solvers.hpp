#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "orbitdist/system.hpp"

namespace orbitdist {

struct CostMatrix {
  long n = 0;
  std::vector<double> entries;  // row-major n*n, entries[i*n+j] = d(x_i, y_j)
  double max_entry = 0.0;
  double error_bound = 0.0;  // per-entry bound vs the true orbit distances

  double at(long i, long j) const { return entries[static_cast<std::size_t>(i * n + j)]; }
};

// Pairwise distances between two equal-length orbit segments of one space.
CostMatrix cost_matrix(const OrbitSegment& x, const OrbitSegment& y);
CostMatrix cost_matrix_from_entries(long n, std::vector<double> entries);

struct MatchingResult {
  std::vector<long> permutation;  // row k matched to column permutation[k], 0-based
  double total_cost = 0.0;
  double mean_cost = 0.0;
  std::string solver;
  bool certified_optimal = false;
  double gap_bound = 0.0;  // 0 for exact solvers; optimality gap cap otherwise
  bool converged = true;   // entropic only: marginal tolerance reached
};

// Exhaustive minimum over all permutations; rejects n > 9.
MatchingResult solve_bruteforce(const CostMatrix& c);

// Dense shortest-augmenting-path assignment, O(n^3). certified_optimal is set
// by an explicit dual-feasibility + complementary-slackness check.
MatchingResult solve_exact(const CostMatrix& c);

// Rank pairing after sorting both sides; optimal for the interval metric.
MatchingResult solve_sorted_line(std::span<const double> xs, std::span<const double> ys);

// Best order-preserving matching over the n cyclic offsets of the sorted
// sequences; optimal for the circle metric.
MatchingResult solve_cyclic_circle(std::span<const double> xs, std::span<const double> ys);

// Log-domain Sinkhorn at regularization epsilon. The returned permutation is
// rounded from the entropic coupling; gap_bound = permutation cost minus a
// feasible dual value, an upper bound on the optimality gap by weak duality.
MatchingResult solve_entropic(const CostMatrix& c, double epsilon = 1e-3,
                              long max_iters = 2000);

enum class SolverKind { Auto, BruteForce, Exact, SortedLine, CyclicCircle, Entropic };

std::string solver_kind_name(SolverKind k);
SolverKind solver_kind_from_name(const std::string& name);

struct FnOptions {
  SolverKind solver = SolverKind::Auto;
  long exact_threshold = 512;  // auto: exact up to here, entropic beyond
  double epsilon = 1e-3;
  long max_iters = 2000;
};

// F_n between two orbit segments: mean matched distance under the minimizing
// permutation. Auto dispatch: sorted on intervals, cyclic on circles, exact
// else entropic on shift spaces.
MatchingResult f_n(const OrbitSegment& x, const OrbitSegment& y,
                   const FnOptions& opts = {});

// Bijection check used by every solver before returning.
bool is_permutation(const std::vector<long>& p);

}  // namespace orbitdist
