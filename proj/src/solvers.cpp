#include "orbitdist/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double recompute_total(const CostMatrix& c, const std::vector<long>& perm) {
  double t = 0.0;
  for (long i = 0; i < c.n; ++i) t += c.at(i, perm[static_cast<std::size_t>(i)]);
  return t;
}

MatchingResult finish(const CostMatrix& c, std::vector<long> perm,
                      std::string solver, bool certified, double gap) {
  if (!is_permutation(perm)) throw std::logic_error(solver + ": non-bijective matching");
  MatchingResult r;
  r.total_cost = recompute_total(c, perm);
  r.mean_cost = r.total_cost / static_cast<double>(c.n);
  r.permutation = std::move(perm);
  r.solver = std::move(solver);
  r.certified_optimal = certified;
  r.gap_bound = gap;
  return r;
}

}  // namespace

bool is_permutation(const std::vector<long>& p) {
  std::vector<char> seen(p.size(), 0);
  for (long v : p) {
    if (v < 0 || v >= static_cast<long>(p.size()) || seen[static_cast<std::size_t>(v)])
      return false;
    seen[static_cast<std::size_t>(v)] = 1;
  }
  return true;
}

CostMatrix cost_matrix(const OrbitSegment& x, const OrbitSegment& y) {
  if (x.length != y.length)
    throw std::invalid_argument("orbit segments must have equal length");
  if (x.system.space.kind != y.system.space.kind)
    throw std::invalid_argument("orbit segments live in different spaces");
  const auto& space = x.system.space;
  long n = x.length;
  CostMatrix c;
  c.n = n;
  c.entries.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  double mx = 0.0;
  if (space.kind == SpaceKind::Shift) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) {
        double d = distance(space, x.points[static_cast<std::size_t>(i)],
                            y.points[static_cast<std::size_t>(j)]);
        c.entries[static_cast<std::size_t>(i * n + j)] = d;
        if (d > mx) mx = d;
      }
  } else {
    // double views are correctly rounded; arithmetic error ~2^-52 per entry
    const auto& xs = x.coords();
    const auto& ys = y.coords();
    bool circle = space.kind == SpaceKind::Circle;
    for (long i = 0; i < n; ++i) {
      double xi = xs[static_cast<std::size_t>(i)];
      for (long j = 0; j < n; ++j) {
        double d = circle ? distance_circle(xi, ys[static_cast<std::size_t>(j)])
                          : distance_interval(xi, ys[static_cast<std::size_t>(j)]);
        c.entries[static_cast<std::size_t>(i * n + j)] = d;
        if (d > mx) mx = d;
      }
    }
  }
  c.max_entry = mx;
  c.error_bound = x.error_bound + y.error_bound + std::ldexp(1.0, -51);
  return c;
}

CostMatrix cost_matrix_from_entries(long n, std::vector<double> entries) {
  if (n < 1 || entries.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw std::invalid_argument("cost matrix needs n*n entries");
  CostMatrix c;
  c.n = n;
  double mx = 0.0;
  for (double e : entries) {
    if (!std::isfinite(e) || e < 0.0)
      throw std::invalid_argument("cost entries must be finite and nonnegative");
    if (e > mx) mx = e;
  }
  c.entries = std::move(entries);
  c.max_entry = mx;
  c.error_bound = 0.0;
  return c;
}

MatchingResult solve_bruteforce(const CostMatrix& c) {
  if (c.n > 9)
    throw std::invalid_argument("brute force capped at n = 9");
  std::vector<long> idx(static_cast<std::size_t>(c.n));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<long> best = idx;
  double best_cost = recompute_total(c, idx);
  while (std::next_permutation(idx.begin(), idx.end())) {
    double t = 0.0;
    for (long i = 0; i < c.n; ++i) {
      t += c.at(i, idx[static_cast<std::size_t>(i)]);
      if (t >= best_cost) break;
    }
    if (t < best_cost) {
      best_cost = t;
      best = idx;
    }
  }
  return finish(c, std::move(best), "bruteforce", true, 0.0);
}

// Shortest augmenting path with potentials; the classic dense O(n^3) scheme.
// Internals are 1-indexed with column 0 as the virtual root.
MatchingResult solve_exact(const CostMatrix& c) {
  long n = c.n;
  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<double> v(static_cast<std::size_t>(n + 1), 0.0);
  std::vector<long> p(static_cast<std::size_t>(n + 1), 0);    // row matched to column j
  std::vector<long> way(static_cast<std::size_t>(n + 1), 0);
  for (long i = 1; i <= n; ++i) {
    p[0] = i;
    long j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n + 1), kInf);
    std::vector<char> used(static_cast<std::size_t>(n + 1), 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      long i0 = p[static_cast<std::size_t>(j0)], j1 = 0;
      double delta = kInf;
      for (long j = 1; j <= n; ++j)
        if (!used[static_cast<std::size_t>(j)]) {
          double cur = c.at(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                       v[static_cast<std::size_t>(j)];
          if (cur < minv[static_cast<std::size_t>(j)]) {
            minv[static_cast<std::size_t>(j)] = cur;
            way[static_cast<std::size_t>(j)] = j0;
          }
          if (minv[static_cast<std::size_t>(j)] < delta) {
            delta = minv[static_cast<std::size_t>(j)];
            j1 = j;
          }
        }
      for (long j = 0; j <= n; ++j)
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      long j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }

  std::vector<long> perm(static_cast<std::size_t>(n), -1);
  for (long j = 1; j <= n; ++j)
    perm[static_cast<std::size_t>(p[static_cast<std::size_t>(j)] - 1)] = j - 1;

  // Optimality certificate: dual feasibility u_i + v_j <= c_ij and
  // complementary slackness on matched pairs, to float tolerance.
  double tol = 1e-9 * (1.0 + c.max_entry);
  bool feasible = true;
  for (long i = 1; i <= n && feasible; ++i)
    for (long j = 1; j <= n; ++j)
      if (u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(j)] >
          c.at(i - 1, j - 1) + tol) {
        feasible = false;
        break;
      }
  double primal = 0.0, dual = 0.0;
  for (long i = 0; i < n; ++i) primal += c.at(i, perm[static_cast<std::size_t>(i)]);
  for (long i = 1; i <= n; ++i)
    dual += u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)];
  bool slack_ok = std::abs(primal - dual) <= tol * static_cast<double>(n);
  bool certified = feasible && slack_ok;
  return finish(c, std::move(perm), "exact", certified,
                certified ? 0.0 : std::max(0.0, primal - dual));
}

namespace {

std::vector<std::size_t> sorted_order(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  return idx;
}

}  // namespace

MatchingResult solve_sorted_line(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("sorted-line needs equal nonempty inputs");
  auto ox = sorted_order(xs);
  auto oy = sorted_order(ys);
  std::size_t n = xs.size();
  std::vector<long> perm(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    perm[ox[k]] = static_cast<long>(oy[k]);
    total += distance_interval(xs[ox[k]], ys[oy[k]]);
  }
  if (!is_permutation(perm)) throw std::logic_error("sorted-line: non-bijective matching");
  MatchingResult r;
  r.permutation = std::move(perm);
  r.total_cost = total;
  r.mean_cost = total / static_cast<double>(n);
  r.solver = "sorted-line";
  r.certified_optimal = true;
  r.gap_bound = 0.0;
  return r;
}

MatchingResult solve_cyclic_circle(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::invalid_argument("cyclic-circle needs equal nonempty inputs");
  auto ox = sorted_order(xs);
  auto oy = sorted_order(ys);
  std::size_t n = xs.size();
  std::vector<double> sx(n), sy(n);
  for (std::size_t k = 0; k < n; ++k) {
    sx[k] = xs[ox[k]];
    sy[k] = ys[oy[k]];
  }
  std::size_t best_t = 0;
  double best = kInf;
  for (std::size_t t = 0; t < n; ++t) {
    double cost = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      cost += distance_circle(sx[k], sy[(k + t) % n]);
      if (cost >= best) break;
    }
    if (cost < best) {
      best = cost;
      best_t = t;
    }
  }
  std::vector<long> perm(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    perm[ox[k]] = static_cast<long>(oy[(k + best_t) % n]);
    total += distance_circle(sx[k], sy[(k + best_t) % n]);
  }
  if (!is_permutation(perm)) throw std::logic_error("cyclic-circle: non-bijective matching");
  MatchingResult r;
  r.permutation = std::move(perm);
  r.total_cost = total;
  r.mean_cost = total / static_cast<double>(n);
  r.solver = "cyclic-circle";
  r.certified_optimal = true;
  r.gap_bound = 0.0;
  return r;
}

MatchingResult solve_entropic(const CostMatrix& c, double epsilon, long max_iters) {
  if (epsilon <= 0.0) throw std::invalid_argument("entropic epsilon must be positive");
  if (max_iters < 1) throw std::invalid_argument("entropic max_iters must be >= 1");
  long n = c.n;
  double nn = static_cast<double>(n);
  // Log-domain Sinkhorn for uniform marginals 1/n; potentials f, g on costs.
  std::vector<double> f(static_cast<std::size_t>(n), 0.0);
  std::vector<double> g(static_cast<std::size_t>(n), 0.0);
  std::vector<double> buf(static_cast<std::size_t>(n));
  double log_m = std::log(1.0 / nn);
  auto lse_row = [&](long i) {  // eps * log sum_j exp((g_j - c_ij)/eps)
    double mx = -kInf;
    for (long j = 0; j < n; ++j) {
      buf[static_cast<std::size_t>(j)] =
          (g[static_cast<std::size_t>(j)] - c.at(i, j)) / epsilon;
      mx = std::max(mx, buf[static_cast<std::size_t>(j)]);
    }
    double s = 0.0;
    for (long j = 0; j < n; ++j) s += std::exp(buf[static_cast<std::size_t>(j)] - mx);
    return epsilon * (mx + std::log(s));
  };
  auto lse_col = [&](long j) {
    double mx = -kInf;
    for (long i = 0; i < n; ++i) {
      buf[static_cast<std::size_t>(i)] =
          (f[static_cast<std::size_t>(i)] - c.at(i, j)) / epsilon;
      mx = std::max(mx, buf[static_cast<std::size_t>(i)]);
    }
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += std::exp(buf[static_cast<std::size_t>(i)] - mx);
    return epsilon * (mx + std::log(s));
  };

  bool converged = false;
  double theta = 1e-6;  // relative row-marginal residual
  for (long it = 0; it < max_iters; ++it) {
    for (long i = 0; i < n; ++i)
      f[static_cast<std::size_t>(i)] = epsilon * log_m - lse_row(i);
    for (long j = 0; j < n; ++j)
      g[static_cast<std::size_t>(j)] = epsilon * log_m - lse_col(j);
    if (it % 10 != 9 && it + 1 != max_iters) continue;
    // row marginals are exact after the f-update; the g-update perturbs them,
    // so their residual measures convergence
    double worst = 0.0;
    for (long i = 0; i < n; ++i) {
      double ri = 0.0;
      for (long j = 0; j < n; ++j)
        ri += std::exp((f[static_cast<std::size_t>(i)] +
                        g[static_cast<std::size_t>(j)] - c.at(i, j)) /
                       epsilon);
      worst = std::max(worst, std::abs(ri * nn - 1.0));
    }
    if (worst <= theta) {
      converged = true;
      break;
    }
  }

  // Extract a permutation: greedy on descending coupling mass, then repair
  // leftovers by cheapest available column.
  std::vector<std::size_t> order(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> logp(order.size());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      logp[static_cast<std::size_t>(i * n + j)] =
          f[static_cast<std::size_t>(i)] + g[static_cast<std::size_t>(j)] - c.at(i, j);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return logp[a] > logp[b]; });
  std::vector<long> perm(static_cast<std::size_t>(n), -1);
  std::vector<char> col_used(static_cast<std::size_t>(n), 0);
  long assigned = 0;
  for (std::size_t e : order) {
    long i = static_cast<long>(e) / n, j = static_cast<long>(e) % n;
    if (perm[static_cast<std::size_t>(i)] < 0 && !col_used[static_cast<std::size_t>(j)]) {
      perm[static_cast<std::size_t>(i)] = j;
      col_used[static_cast<std::size_t>(j)] = 1;
      if (++assigned == n) break;
    }
  }
  for (long i = 0; i < n && assigned < n; ++i)
    if (perm[static_cast<std::size_t>(i)] < 0) {
      long bestj = -1;
      double bc = kInf;
      for (long j = 0; j < n; ++j)
        if (!col_used[static_cast<std::size_t>(j)] && c.at(i, j) < bc) {
          bc = c.at(i, j);
          bestj = j;
        }
      perm[static_cast<std::size_t>(i)] = bestj;
      col_used[static_cast<std::size_t>(bestj)] = 1;
      ++assigned;
    }

  // Feasible dual from the Sinkhorn potentials: u_i = min_j (c_ij - g_j)
  // guarantees u_i + g_j <= c_ij, so sum(u) + sum(g) lower-bounds the LP.
  double dual = 0.0;
  for (long i = 0; i < n; ++i) {
    double ui = kInf;
    for (long j = 0; j < n; ++j)
      ui = std::min(ui, c.at(i, j) - g[static_cast<std::size_t>(j)]);
    dual += ui;
  }
  for (long j = 0; j < n; ++j) dual += g[static_cast<std::size_t>(j)];

  auto r = finish(c, std::move(perm), "entropic", false, 0.0);
  r.gap_bound = std::max(0.0, (r.total_cost - dual) / nn);
  r.converged = converged;
  return r;
}

std::string solver_kind_name(SolverKind k) {
  switch (k) {
    case SolverKind::Auto: return "auto";
    case SolverKind::BruteForce: return "bruteforce";
    case SolverKind::Exact: return "exact";
    case SolverKind::SortedLine: return "sorted-line";
    case SolverKind::CyclicCircle: return "cyclic-circle";
    case SolverKind::Entropic: return "entropic";
  }
  return "?";
}

SolverKind solver_kind_from_name(const std::string& name) {
  if (name == "auto") return SolverKind::Auto;
  if (name == "bruteforce") return SolverKind::BruteForce;
  if (name == "exact") return SolverKind::Exact;
  if (name == "sorted-line" || name == "sorted") return SolverKind::SortedLine;
  if (name == "cyclic-circle" || name == "cyclic") return SolverKind::CyclicCircle;
  if (name == "entropic") return SolverKind::Entropic;
  throw ConfigError("unknown solver: " + name);
}

MatchingResult f_n(const OrbitSegment& x, const OrbitSegment& y, const FnOptions& opts) {
  if (x.length != y.length)
    throw std::invalid_argument("orbit segments must have equal length");
  if (x.system.space.kind != y.system.space.kind)
    throw std::invalid_argument("orbit segments live in different spaces");
  SpaceKind kind = x.system.space.kind;
  SolverKind s = opts.solver;
  if (s == SolverKind::Auto) {
    if (kind == SpaceKind::Interval) s = SolverKind::SortedLine;
    else if (kind == SpaceKind::Circle) s = SolverKind::CyclicCircle;
    else s = x.length <= opts.exact_threshold ? SolverKind::Exact : SolverKind::Entropic;
  }
  switch (s) {
    case SolverKind::SortedLine:
      if (kind != SpaceKind::Interval)
        throw std::invalid_argument("sorted-line solver needs the interval metric");
      return solve_sorted_line(x.coords(), y.coords());
    case SolverKind::CyclicCircle:
      if (kind != SpaceKind::Circle)
        throw std::invalid_argument("cyclic-circle solver needs the circle metric");
      return solve_cyclic_circle(x.coords(), y.coords());
    case SolverKind::BruteForce:
      return solve_bruteforce(cost_matrix(x, y));
    case SolverKind::Exact:
      return solve_exact(cost_matrix(x, y));
    case SolverKind::Entropic:
      return solve_entropic(cost_matrix(x, y), opts.epsilon, opts.max_iters);
    case SolverKind::Auto: break;
  }
  throw std::logic_error("unreachable solver dispatch");
}

}  // namespace orbitdist
