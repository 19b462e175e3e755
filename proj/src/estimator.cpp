#include "orbitdist/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

Schedule geometric_schedule(int min_exp, int max_exp) {
  if (min_exp < 0 || max_exp < min_exp || max_exp > 30)
    throw ConfigError("bad schedule exponents");
  Schedule s;
  for (int e = min_exp; e <= max_exp; ++e) s.horizons.push_back(1L << e);
  return s;
}

Schedule make_schedule(std::vector<long> horizons) {
  if (horizons.empty()) throw ConfigError("empty schedule");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    if (horizons[i] < 1) throw ConfigError("schedule horizons must be >= 1");
    if (i && horizons[i] <= horizons[i - 1])
      throw ConfigError("schedule must be strictly increasing");
  }
  return {std::move(horizons)};
}

namespace {

std::size_t tail_start_index(std::size_t len, double tail_fraction) {
  if (len == 0) throw std::invalid_argument("empty sequence");
  if (tail_fraction <= 0.0 || tail_fraction > 1.0)
    throw ConfigError("tail fraction must lie in (0,1]");
  std::size_t count = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(len) - 1e-12));
  if (count < 1) count = 1;
  if (count > len) count = len;
  return len - count;
}

// Orbit prefix as a lightweight segment so solvers can reuse one generation.
OrbitSegment prefix(const OrbitSegment& full, long n) {
  if (n == full.length) return full;
  OrbitSegment seg;
  seg.system = full.system;
  seg.base = full.base;
  seg.start_index = full.start_index;
  seg.length = n;
  seg.points.assign(full.points.begin(), full.points.begin() + n);
  seg.precision_bits_used = full.precision_bits_used;
  seg.error_bound = full.error_bound;
  if (!full.coords_.empty())
    seg.coords_.assign(full.coords_.begin(), full.coords_.begin() + n);
  return seg;
}

}  // namespace

FSequence f_sequence(const SystemSpec& spec, const SpacePoint& x,
                     const SpacePoint& y, const Schedule& schedule,
                     const FnOptions& opts) {
  if (schedule.horizons.empty()) throw ConfigError("empty schedule");
  long maxn = schedule.horizons.back();
  OrbitSegment ox = orbit_segment(spec, x, maxn);
  OrbitSegment oy = orbit_segment(spec, y, maxn);
  FSequence seq;
  seq.schedule = schedule;
  for (long n : schedule.horizons) {
    auto r = f_n(prefix(ox, n), prefix(oy, n), opts);
    seq.values.push_back(r.mean_cost);
    seq.solver_tags.push_back(r.solver);
    seq.gap_bounds.push_back(r.gap_bound);
  }
  return seq;
}

LimitEstimate limit_estimate(const FSequence& seq, double tail_fraction,
                             double tolerance) {
  if (seq.values.empty()) throw std::invalid_argument("empty F sequence");
  LimitEstimate e;
  e.tolerance = tolerance;
  e.tail_fraction = tail_fraction;
  e.tail_start = tail_start_index(seq.values.size(), tail_fraction);
  double mx = -1.0, mn = 2.0;
  bool first = true;
  for (std::size_t i = e.tail_start; i < seq.values.size(); ++i) {
    double v = seq.values[i];
    if (first || v > mx) mx = v;
    if (first || v < mn) mn = v;
    first = false;
  }
  e.fbar_hat = mx;
  e.funder_hat = mn;
  e.spread = mx - mn;
  e.converged = e.spread <= tolerance;
  return e;
}

std::string status_name(Status s) {
  switch (s) {
    case Status::Holds: return "holds";
    case Status::Fails: return "fails";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

MembershipReport nf_membership(const SystemSpec& spec, const SpacePoint& x,
                               const SpacePoint& y, const Schedule& schedule,
                               const EstimatorOptions& opts) {
  MembershipReport rep;
  rep.sequence = f_sequence(spec, x, y, schedule, opts.fn);
  rep.estimate = limit_estimate(rep.sequence, opts.tail_fraction, opts.limit_tolerance);
  double gap = 0.0;
  for (std::size_t i = rep.estimate.tail_start; i < rep.sequence.gap_bounds.size(); ++i)
    gap = std::max(gap, rep.sequence.gap_bounds[i]);
  rep.gap_allowance = gap;
  double tol = opts.membership_tolerance;
  if (rep.estimate.funder_hat - gap > tol) {
    rep.verdict.status = Status::Fails;
    rep.verdict.margin = rep.estimate.funder_hat - gap - tol;
    rep.verdict.diagnostics = "tail minimum stays above tolerance";
  } else if (rep.estimate.converged && rep.estimate.fbar_hat + gap <= tol) {
    rep.verdict.status = Status::Holds;
    rep.verdict.margin = tol - rep.estimate.fbar_hat - gap;
  } else {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.margin = 0.0;
    rep.verdict.diagnostics =
        rep.estimate.converged
            ? "tail straddles the tolerance"
            : "tail spread " + std::to_string(rep.estimate.spread) +
                  " above limit tolerance";
  }
  return rep;
}

TimeAverageReport time_average(const SystemSpec& spec, const SpacePoint& x,
                               const Observable& f, const Schedule& schedule,
                               double tail_fraction) {
  if (schedule.horizons.empty()) throw ConfigError("empty schedule");
  long maxn = schedule.horizons.back();
  OrbitSegment ox = orbit_segment(spec, x, maxn);
  TimeAverageReport rep;
  rep.observable = f.name;
  rep.schedule = schedule;
  double acc = 0.0;
  std::size_t next = 0;
  for (long k = 0; k < maxn; ++k) {
    acc += f.eval(ox.points[static_cast<std::size_t>(k)]);
    while (next < schedule.horizons.size() && schedule.horizons[next] == k + 1) {
      rep.partial_means.push_back(acc / static_cast<double>(k + 1));
      ++next;
    }
  }
  rep.fstar_hat = rep.partial_means.back();
  std::size_t t0 = tail_start_index(rep.partial_means.size(), tail_fraction);
  double mx = rep.partial_means[t0], mn = rep.partial_means[t0];
  for (std::size_t i = t0; i < rep.partial_means.size(); ++i) {
    mx = std::max(mx, rep.partial_means[i]);
    mn = std::min(mn, rep.partial_means[i]);
  }
  rep.oscillation = mx - mn;
  return rep;
}

GenericityReport generic_probe(const SystemSpec& spec, const SpacePoint& x,
                               const std::vector<Observable>& battery,
                               const Schedule& schedule, double tol,
                               double tail_fraction) {
  if (battery.empty()) throw ConfigError("empty observable battery");
  GenericityReport rep;
  double worst_osc = 0.0;
  bool any_oscillating_fail = false;
  std::string fail_name;
  for (const auto& f : battery) {
    auto ta = time_average(spec, x, f, schedule, tail_fraction);
    if (ta.oscillation > worst_osc) {
      worst_osc = ta.oscillation;
      rep.worst_observable = f.name;
    }
    if (ta.oscillation > 3.0 * tol) {
      // require genuine oscillation: the tail must rise and fall, a monotone
      // drift is merely unconverged
      std::size_t t0 = tail_start_index(ta.partial_means.size(), tail_fraction);
      bool rose = false, fell = false;
      for (std::size_t i = t0 + 1; i < ta.partial_means.size(); ++i) {
        if (ta.partial_means[i] > ta.partial_means[i - 1]) rose = true;
        if (ta.partial_means[i] < ta.partial_means[i - 1]) fell = true;
      }
      if (rose && fell && !any_oscillating_fail) {
        any_oscillating_fail = true;
        fail_name = f.name;
      }
    }
    rep.reports.push_back(std::move(ta));
  }
  if (any_oscillating_fail) {
    rep.verdict.status = Status::Fails;
    rep.verdict.margin = worst_osc - 3.0 * tol;
    rep.verdict.diagnostics = "oscillating Cesaro means for " + fail_name;
    rep.worst_observable = fail_name;
  } else if (worst_osc <= tol) {
    rep.verdict.status = Status::Holds;
    rep.verdict.margin = tol - worst_osc;
  } else {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.diagnostics = "tail oscillation " + std::to_string(worst_osc) +
                              " above tolerance for " + rep.worst_observable;
  }
  return rep;
}

double mean_gap(const SystemSpec& spec, const SpacePoint& x, const SpacePoint& y,
                long n) {
  OrbitSegment ox = orbit_segment(spec, x, n);
  OrbitSegment oy = orbit_segment(spec, y, n);
  double acc = 0.0;
  if (spec.space.kind == SpaceKind::Shift) {
    for (long k = 0; k < n; ++k)
      acc += distance(spec.space, ox.points[static_cast<std::size_t>(k)],
                      oy.points[static_cast<std::size_t>(k)]);
  } else {
    bool circle = spec.space.kind == SpaceKind::Circle;
    const auto& xs = ox.coords();
    const auto& ys = oy.coords();
    for (long k = 0; k < n; ++k)
      acc += circle ? distance_circle(xs[static_cast<std::size_t>(k)],
                                      ys[static_cast<std::size_t>(k)])
                    : distance_interval(xs[static_cast<std::size_t>(k)],
                                        ys[static_cast<std::size_t>(k)]);
  }
  return acc / static_cast<double>(n);
}

std::vector<double> mean_gap_sequence(const SystemSpec& spec, const SpacePoint& x,
                                      const SpacePoint& y, const Schedule& schedule) {
  if (schedule.horizons.empty()) throw ConfigError("empty schedule");
  long maxn = schedule.horizons.back();
  OrbitSegment ox = orbit_segment(spec, x, maxn);
  OrbitSegment oy = orbit_segment(spec, y, maxn);
  std::vector<double> out;
  double acc = 0.0;
  std::size_t next = 0;
  bool shift = spec.space.kind == SpaceKind::Shift;
  bool circle = spec.space.kind == SpaceKind::Circle;
  for (long k = 0; k < maxn; ++k) {
    if (shift)
      acc += distance(spec.space, ox.points[static_cast<std::size_t>(k)],
                      oy.points[static_cast<std::size_t>(k)]);
    else if (circle)
      acc += distance_circle(ox.coords()[static_cast<std::size_t>(k)],
                             oy.coords()[static_cast<std::size_t>(k)]);
    else
      acc += distance_interval(ox.coords()[static_cast<std::size_t>(k)],
                               oy.coords()[static_cast<std::size_t>(k)]);
    while (next < schedule.horizons.size() && schedule.horizons[next] == k + 1) {
      out.push_back(acc / static_cast<double>(k + 1));
      ++next;
    }
  }
  return out;
}

ShiftInvarianceReport shift_invariance_check(const SystemSpec& spec,
                                             const SpacePoint& x,
                                             const SpacePoint& y, long r, long s,
                                             long n, const FnOptions& opts) {
  if (r < 0 || s < 0) throw std::invalid_argument("shifts must be nonnegative");
  if (n <= r + s) throw std::invalid_argument("need n > r + s");
  ShiftInvarianceReport rep;
  OrbitSegment ox = orbit_segment(spec, x, n);
  OrbitSegment oy = orbit_segment(spec, y, n);
  rep.f_base = f_n(ox, oy, opts).mean_cost;
  OrbitSegment oxr = orbit_segment(spec, x, n, 1 + r);
  OrbitSegment oys = orbit_segment(spec, y, n, 1 + s);
  rep.f_shifted = f_n(oxr, oys, opts).mean_cost;
  rep.difference = std::fabs(rep.f_shifted - rep.f_base);
  rep.bound = static_cast<double>(r + s) * spec.space.diameter() /
                  static_cast<double>(n) +
              1e-9;
  rep.within_bound = rep.difference <= rep.bound;
  return rep;
}

PropertyReport property_check(const SystemSpec& spec, const SpacePoint& x,
                              const SpacePoint& y, const SpacePoint& z, long n,
                              const FnOptions& opts, double tol) {
  OrbitSegment ox = orbit_segment(spec, x, n);
  OrbitSegment oy = orbit_segment(spec, y, n);
  OrbitSegment oz = orbit_segment(spec, z, n);
  PropertyReport rep;
  rep.tolerance = tol;
  rep.f_xy = f_n(ox, oy, opts).mean_cost;
  rep.f_yx = f_n(oy, ox, opts).mean_cost;
  rep.f_xz = f_n(ox, oz, opts).mean_cost;
  rep.f_zx = f_n(oz, ox, opts).mean_cost;
  rep.f_yz = f_n(oy, oz, opts).mean_cost;
  rep.f_zy = f_n(oz, oy, opts).mean_cost;
  rep.symmetry_violation = std::max({std::fabs(rep.f_xy - rep.f_yx),
                                     std::fabs(rep.f_xz - rep.f_zx),
                                     std::fabs(rep.f_yz - rep.f_zy)});
  rep.triangle_violation = std::max({rep.f_xz - rep.f_xy - rep.f_yz,
                                     rep.f_xy - rep.f_xz - rep.f_zy,
                                     rep.f_yz - rep.f_yx - rep.f_xz});
  rep.triangle_violation = std::max(rep.triangle_violation, 0.0);
  rep.pass = rep.symmetry_violation <= tol && rep.triangle_violation <= tol;
  return rep;
}

}  // namespace orbitdist
