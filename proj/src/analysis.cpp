#include "orbitdist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

long cell_of_1d(double x, long num_cells) {
  long c = static_cast<long>(std::floor(x * static_cast<double>(num_cells)));
  if (c < 0) c = 0;
  if (c >= num_cells) c = num_cells - 1;  // x = 1 joins the top cell
  return c;
}

void bin_orbit(const OrbitSegment& seg, long num_cells, std::vector<double>& freq) {
  freq.assign(static_cast<std::size_t>(num_cells), 0.0);
  double w = 1.0 / static_cast<double>(seg.length);
  for (double x : seg.coords()) freq[static_cast<std::size_t>(cell_of_1d(x, num_cells))] += w;
}

}  // namespace

PartitionCover partition_cover(const SystemSpec& spec, const SpacePoint& x,
                               const SpacePoint& y, long n, double eps) {
  if (spec.space.kind == SpaceKind::Shift)
    throw ConfigError("partition covers need a 1-D space");
  if (eps <= 0.0 || eps > spec.space.diameter())
    throw ConfigError("cover eps must lie in (0, diameter]");
  PartitionCover cover;
  cover.eps = eps;
  cover.num_cells = static_cast<long>(std::ceil(1.0 / eps - 1e-12));
  OrbitSegment ox = orbit_segment(spec, x, n);
  OrbitSegment oy = orbit_segment(spec, y, n);
  bin_orbit(ox, cover.num_cells, cover.freq_x);
  bin_orbit(oy, cover.num_cells, cover.freq_y);
  cover.a.resize(static_cast<std::size_t>(cover.num_cells));
  double sum = 0.0;
  for (long c = 0; c < cover.num_cells; ++c) {
    cover.a[static_cast<std::size_t>(c)] =
        std::min(cover.freq_x[static_cast<std::size_t>(c)],
                 cover.freq_y[static_cast<std::size_t>(c)]);
    sum += cover.a[static_cast<std::size_t>(c)];
  }
  cover.covered_mass = sum;
  return cover;
}

double prop34_bound(const PartitionCover& cover, double diameter) {
  double b = cover.eps * cover.covered_mass + diameter * (1.0 - cover.covered_mass);
  return std::clamp(b, 0.0, diameter);
}

namespace {

// Partner at distance just under delta. The jitter is a full-precision random
// dyadic scaled to ~2^-70: without it, grid + delta is a short dyadic whose
// orbit collapses to a fixed point under exact-linear expanding maps.
SpacePoint partner_point(const SystemSpec& spec, const SpacePoint& g, double delta,
                         Rng& rng, long horizon) {
  if (spec.space.kind == SpaceKind::Shift) {
    long m = static_cast<long>(std::ceil(std::log2(1.0 / delta) - 1e-12));
    if (m < 0) m = 0;
    std::size_t need = static_cast<std::size_t>(horizon) + 66;
    const auto& s = *g.stream;
    std::vector<std::uint32_t> t(need);
    for (std::size_t i = 0; i < need; ++i)
      t[i] = g.offset + i < s.size() ? s[g.offset + i] : 0;
    // first difference exactly at index m: distance 2^-m <= delta
    std::size_t mm = static_cast<std::size_t>(m);
    if (mm >= need) mm = need - 1;
    t[mm] = (t[mm] + 1 +
             static_cast<std::uint32_t>(rng.index(spec.space.alphabet_size - 1))) %
            spec.space.alphabet_size;
    for (std::size_t i = mm + 1; i < need; ++i)
      t[i] = static_cast<std::uint32_t>(rng.index(spec.space.alphabet_size));
    return make_shift_point(spec.space, std::move(t));
  }
  long prec = required_precision(spec, std::max<long>(horizon, 1)) + 8;
  Real d(prec);
  mpfr_set_d(d.get(), delta, MPFR_RNDN);
  Real shrink(prec);
  mpfr_set_ui(shrink.get(), 1, MPFR_RNDN);
  mpfr_div_2ui(shrink.get(), shrink.get(), 20, MPFR_RNDN);
  mpfr_ui_sub(shrink.get(), 1, shrink.get(), MPFR_RNDN);
  mpfr_mul(d.get(), d.get(), shrink.get(), MPFR_RNDN);  // delta * (1 - 2^-20)
  Real jit = rng.unit_real(prec);
  mpfr_div_2ui(jit.get(), jit.get(), 70, MPFR_RNDN);
  mpfr_add(d.get(), d.get(), jit.get(), MPFR_RNDN);
  Real p = g.coord;
  p.set_precision(prec);
  mpfr_add(p.get(), p.get(), d.get(), MPFR_RNDN);
  if (spec.space.kind == SpaceKind::Circle) {
    if (mpfr_cmp_ui(p.get(), 1) >= 0) mpfr_sub_ui(p.get(), p.get(), 1, MPFR_RNDN);
  } else if (mpfr_cmp_ui(p.get(), 1) > 0) {
    // g + d overflows the interval, so g is within d of the top end; fall back
    // to g - d, and if that underflows too, the endpoint 1 is within d of g.
    p = g.coord;
    p.set_precision(prec);
    mpfr_sub(p.get(), p.get(), d.get(), MPFR_RNDN);
    if (mpfr_sgn(p.get()) < 0) mpfr_set_ui(p.get(), 1, MPFR_RNDN);
  }
  return make_point(spec.space, std::move(p));
}

std::vector<SpacePoint> scan_grid(const SystemSpec& spec, long grid_size, Rng& rng,
                                  long horizon) {
  std::vector<SpacePoint> grid;
  if (spec.space.kind == SpaceKind::Shift) {
    for (long i = 0; i < grid_size; ++i)
      grid.push_back(make_shift_point(
          spec.space, rng.symbol_stream(static_cast<std::size_t>(horizon) + 66,
                                        spec.space.alphabet_size)));
  } else {
    long prec = required_precision(spec, std::max<long>(horizon, 1)) + 8;
    for (long i = 0; i < grid_size; ++i) {
      Real c(prec);
      mpfr_set_ui(c.get(), static_cast<unsigned long>(i), MPFR_RNDN);
      mpfr_div_ui(c.get(), c.get(), static_cast<unsigned long>(grid_size), MPFR_RNDN);
      grid.push_back(make_point(spec.space, std::move(c)));
    }
  }
  for (auto& p : adversarial_points(spec, horizon)) grid.push_back(std::move(p));
  return grid;
}

}  // namespace

std::vector<SpacePoint> adversarial_points(const SystemSpec& spec, long horizon) {
  std::vector<SpacePoint> out;
  long prec = spec.space.kind == SpaceKind::Shift
                  ? 0
                  : required_precision(spec, std::max<long>(horizon, 1)) + 8;
  auto pt = [&](double v) { return make_point(spec.space, Real::from_double(v, prec)); };
  switch (spec.family) {
    case Family::Identity: break;  // every point is fixed already
    case Family::Rotation: break;  // no distinguished points
    case Family::Doubling: out.push_back(pt(0.0)); break;
    case Family::Tent:
      out.push_back(pt(0.0));
      if (spec.param > 1.0)  // interior fixed point s/(1+s)
        out.push_back(pt(spec.param / (1.0 + spec.param)));
      break;
    case Family::Logistic:
      out.push_back(pt(0.0));
      if (spec.param > 1.0) out.push_back(pt(1.0 - 1.0 / spec.param));
      break;
    case Family::PaperS1:
      out.push_back(pt(0.0));  // period-2: 0 -> 1/2 -> 0
      out.push_back(pt(0.5));
      break;
    case Family::FullShift: {
      std::vector<std::uint32_t> zeros(static_cast<std::size_t>(horizon) + 66, 0);
      out.push_back(make_shift_point(spec.space, std::move(zeros)));
      break;
    }
  }
  return out;
}

EquicontinuityScan wme_scan(const SystemSpec& spec, const std::vector<double>& deltas,
                            const Schedule& schedule, const ScanOptions& opts) {
  if (deltas.empty()) throw ConfigError("empty delta ladder");
  if (opts.grid_size < 2) throw ConfigError("scan grid size must be >= 2");
  for (double d : deltas)
    if (d <= 0.0 || d > spec.space.diameter())
      throw ConfigError("delta must lie in (0, diameter]");
  EquicontinuityScan scan;
  scan.deltas = deltas;
  std::sort(scan.deltas.begin(), scan.deltas.end());
  Rng rng(opts.seed, 0xD1);
  long horizon = schedule.horizons.back();
  auto grid = scan_grid(spec, opts.grid_size, rng, horizon);
  double cum_f = 0.0, cum_gap = 0.0;
  for (double delta : scan.deltas) {
    double rung_f = 0.0, rung_gap = 0.0;
    for (const auto& g : grid) {
      SpacePoint q = partner_point(spec, g, delta, rng, horizon);
      auto rep = nf_membership(spec, g, q, schedule, opts.est);
      rung_f = std::max(rung_f, rep.estimate.fbar_hat);
      auto gaps = mean_gap_sequence(spec, g, q, schedule);
      for (std::size_t i = rep.estimate.tail_start; i < gaps.size(); ++i)
        rung_gap = std::max(rung_gap, gaps[i]);
    }
    scan.raw_modulus.push_back(rung_f);
    scan.raw_contrast.push_back(rung_gap);
    cum_f = std::max(cum_f, rung_f);
    cum_gap = std::max(cum_gap, rung_gap);
    scan.modulus.push_back(cum_f);
    scan.contrast_modulus.push_back(cum_gap);
  }
  return scan;
}

ContinuityScan ta_continuity_scan(const SystemSpec& spec, const Observable& f,
                                  const std::vector<double>& deltas,
                                  const Schedule& schedule, const ScanOptions& opts,
                                  double flag_floor) {
  if (deltas.empty()) throw ConfigError("empty delta ladder");
  if (opts.grid_size < 2) throw ConfigError("scan grid size must be >= 2");
  ContinuityScan scan;
  scan.observable = f.name;
  scan.deltas = deltas;
  scan.flag_floor = flag_floor;
  std::sort(scan.deltas.begin(), scan.deltas.end());
  Rng rng(opts.seed, 0xC7);
  long horizon = schedule.horizons.back();
  auto grid = scan_grid(spec, opts.grid_size, rng, horizon);
  std::vector<double> fstar_grid;
  fstar_grid.reserve(grid.size());
  for (const auto& g : grid)
    fstar_grid.push_back(
        time_average(spec, g, f, schedule, opts.est.tail_fraction).fstar_hat);
  double cum = 0.0;
  for (double delta : scan.deltas) {
    double rung = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      SpacePoint q = partner_point(spec, grid[i], delta, rng, horizon);
      double fq = time_average(spec, q, f, schedule, opts.est.tail_fraction).fstar_hat;
      rung = std::max(rung, std::fabs(fstar_grid[i] - fq));
    }
    scan.raw_modulus.push_back(rung);
    cum = std::max(cum, rung);
    scan.modulus.push_back(cum);
  }
  scan.discontinuity_flag = scan.modulus.front() > flag_floor;
  return scan;
}

SpacePoint sample_point(const SystemSpec& spec, const SamplerSpec& sampler, Rng& rng,
                        long horizon, long k) {
  std::size_t window = static_cast<std::size_t>(horizon) + 66;
  switch (sampler.kind) {
    case SamplerKind::Lebesgue: {
      if (spec.space.kind == SpaceKind::Shift)
        return make_shift_point(spec.space,
                                rng.symbol_stream(window, spec.space.alphabet_size));
      long prec = required_precision(spec, std::max<long>(horizon, 1)) + 8;
      return make_point(spec.space, rng.unit_real(prec));
    }
    case SamplerKind::Atomic: {
      if (sampler.atoms.empty() || sampler.atoms.size() != sampler.weights.size())
        throw ConfigError("atomic sampler needs matching atoms and weights");
      double total = std::accumulate(sampler.weights.begin(), sampler.weights.end(), 0.0);
      if (total <= 0.0) throw ConfigError("atomic sampler weights must sum > 0");
      double u = rng.unit() * total, acc = 0.0;
      std::size_t pick = sampler.atoms.size() - 1;
      for (std::size_t i = 0; i < sampler.weights.size(); ++i) {
        acc += sampler.weights[i];
        if (u < acc) {
          pick = i;
          break;
        }
      }
      if (spec.space.kind == SpaceKind::Shift) {
        const std::string& a = sampler.atoms[pick];
        if (a.empty()) throw ConfigError("empty symbol atom");
        std::vector<std::uint32_t> s(window);
        for (std::size_t i = 0; i < window; ++i) {
          char ch = a[i % a.size()];
          if (ch < '0' || ch > '9') throw ConfigError("symbol atoms use digits");
          s[i] = static_cast<std::uint32_t>(ch - '0');
        }
        return make_shift_point(spec.space, std::move(s));
      }
      long prec = required_precision(spec, std::max<long>(horizon, 1)) + 8;
      return make_point(spec.space, Real::from_string(sampler.atoms[pick], prec));
    }
    case SamplerKind::OrbitTail: {
      long steps = sampler.burn_in + k * sampler.stride;
      if (steps < 1) steps = 1;
      if (spec.space.kind == SpaceKind::Shift) {
        auto s = rng.symbol_stream(window + static_cast<std::size_t>(steps),
                                   spec.space.alphabet_size);
        return make_shift_point(spec.space, std::move(s),
                                static_cast<std::size_t>(steps));
      }
      long prec = required_precision(spec, std::max<long>(steps + horizon, 1)) + 8;
      SpacePoint base = make_point(spec.space, Real::from_string(sampler.base, prec));
      return orbit_segment(spec, base, 1, steps).points.front();
    }
  }
  throw std::logic_error("unreachable sampler kind");
}

namespace {

MeasureProbeReport pair_probe(const SystemSpec& spec, const Schedule& schedule,
                              const EstimatorOptions& est, std::string name,
                              const std::vector<std::pair<SpacePoint, SpacePoint>>& pairs,
                              bool require_all) {
  MeasureProbeReport rep;
  rep.probe = std::move(name);
  long holds = 0, fails = 0, inconclusive = 0;
  double min_hold_margin = 2.0, witness_margin = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto m = nf_membership(spec, pairs[i].first, pairs[i].second, schedule, est);
    PairRow row;
    row.index = static_cast<long>(i);
    row.verdict = m.verdict;
    row.fbar_hat = m.estimate.fbar_hat;
    row.funder_hat = m.estimate.funder_hat;
    row.spread = m.estimate.spread;
    if (spec.space.kind != SpaceKind::Shift) {
      row.x_coord = coordinate_view(pairs[i].first);
      row.y_coord = coordinate_view(pairs[i].second);
    }
    switch (m.verdict.status) {
      case Status::Holds:
        ++holds;
        min_hold_margin = std::min(min_hold_margin, m.verdict.margin);
        break;
      case Status::Fails:
        ++fails;
        if (!rep.witness) {
          rep.witness = static_cast<long>(i);
          witness_margin = m.verdict.margin;
        }
        break;
      case Status::Inconclusive:
        ++inconclusive;
        break;
    }
    rep.pairs.push_back(std::move(row));
  }
  double npairs = static_cast<double>(pairs.size());
  rep.nf_fraction = npairs > 0 ? static_cast<double>(holds) / npairs : 0.0;
  rep.abstention_rate = npairs > 0 ? static_cast<double>(inconclusive) / npairs : 1.0;
  rep.consistent_flag = rep.nf_fraction >= 1.0 - 2.0 * rep.abstention_rate;
  if (require_all) {
    // one failing pair witnesses a second invariant measure
    if (fails > 0) {
      rep.verdict.status = Status::Fails;
      rep.verdict.margin = witness_margin;
      rep.verdict.diagnostics = "witness pair " + std::to_string(*rep.witness);
    } else if (inconclusive == 0) {
      rep.verdict.status = Status::Holds;
      rep.verdict.margin = min_hold_margin;
    } else {
      rep.verdict.status = Status::Inconclusive;
      rep.verdict.diagnostics = std::to_string(inconclusive) + " abstentions";
    }
  } else {
    // fraction-level conclusion for a sampled measure
    if (rep.consistent_flag && rep.abstention_rate < 0.5) {
      rep.verdict.status = Status::Holds;
      rep.verdict.margin = rep.nf_fraction - (1.0 - 2.0 * rep.abstention_rate);
    } else if (!rep.consistent_flag) {
      rep.verdict.status = Status::Fails;
      rep.verdict.margin = (1.0 - 2.0 * rep.abstention_rate) - rep.nf_fraction;
      if (rep.witness)
        rep.verdict.diagnostics = "witness pair " + std::to_string(*rep.witness);
    } else {
      rep.verdict.status = Status::Inconclusive;
      rep.verdict.diagnostics = "abstention rate " + std::to_string(rep.abstention_rate);
    }
  }
  return rep;
}

}  // namespace

MeasureProbeReport unique_ergodicity_probe(const SystemSpec& spec,
                                           const Schedule& schedule,
                                           const ProbeOptions& opts) {
  if (opts.num_pairs < 1) throw ConfigError("probe needs at least one pair");
  Rng rng(opts.seed, 0x0E);
  long horizon = schedule.horizons.back();
  SamplerSpec leb;
  std::vector<std::pair<SpacePoint, SpacePoint>> pairs;
  for (long i = 0; i < opts.num_pairs; ++i)
    pairs.emplace_back(sample_point(spec, leb, rng, horizon, i),
                       sample_point(spec, leb, rng, horizon, i));
  if (opts.adversarial)
    for (auto& a : adversarial_points(spec, horizon))
      pairs.emplace_back(a, sample_point(spec, leb, rng, horizon, 0));
  return pair_probe(spec, schedule, opts.est, "unique-ergodicity", pairs, true);
}

MeasureProbeReport ergodicity_probe(const SystemSpec& spec, const SamplerSpec& sampler,
                                    const Schedule& schedule, const ProbeOptions& opts) {
  if (opts.num_pairs < 1) throw ConfigError("probe needs at least one pair");
  Rng rng(opts.seed, 0xE5);
  long horizon = schedule.horizons.back();
  std::vector<std::pair<SpacePoint, SpacePoint>> pairs;
  for (long i = 0; i < opts.num_pairs; ++i)
    pairs.emplace_back(sample_point(spec, sampler, rng, horizon, 2 * i),
                       sample_point(spec, sampler, rng, horizon, 2 * i + 1));
  return pair_probe(spec, schedule, opts.est, "ergodicity", pairs, false);
}

MeasureProbeReport physical_probe(const SystemSpec& spec, const SamplerSpec& sampler,
                                  const Schedule& schedule, const PhysicalOptions& opts) {
  if (opts.num_points < 2) throw ConfigError("physical probe needs >= 2 points");
  if (opts.mass_threshold <= 0.0 || opts.mass_threshold >= 1.0)
    throw ConfigError("mass threshold must lie in (0,1)");
  Rng rng(opts.seed, 0xF1);
  long horizon = schedule.horizons.back();
  std::vector<SpacePoint> pts;
  for (long i = 0; i < opts.num_points; ++i)
    pts.push_back(sample_point(spec, sampler, rng, horizon, i));

  MeasureProbeReport rep;
  rep.probe = "physical";
  auto battery = default_battery(spec.space);
  std::vector<bool> generic(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto g = generic_probe(spec, pts[i], battery, schedule, opts.genericity_tol,
                           opts.est.tail_fraction);
    generic[i] = g.verdict.status == Status::Holds;
    if (generic[i]) ++rep.num_generic;
  }

  // single linkage over pairwise membership among the generic points
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&parent](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!generic[i]) continue;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (!generic[j]) continue;
      auto m = nf_membership(spec, pts[i], pts[j], schedule, opts.est);
      PairRow row;
      row.index = static_cast<long>(rep.pairs.size());
      row.verdict = m.verdict;
      row.fbar_hat = m.estimate.fbar_hat;
      row.funder_hat = m.estimate.funder_hat;
      row.spread = m.estimate.spread;
      if (spec.space.kind != SpaceKind::Shift) {
        row.x_coord = coordinate_view(pts[i]);
        row.y_coord = coordinate_view(pts[j]);
      }
      rep.pairs.push_back(std::move(row));
      if (m.verdict.status == Status::Holds) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<long>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (generic[i]) groups[find(i)].push_back(static_cast<long>(i));
  for (auto& [root, members] : groups) {
    double mass = static_cast<double>(members.size()) / static_cast<double>(pts.size());
    if (mass < opts.mass_threshold) continue;
    ClusterRow cl;
    cl.members = members;
    cl.mass = mass;
    cl.representative = members.front();
    for (const auto& f : battery)
      cl.fingerprint.push_back(
          time_average(spec, pts[static_cast<std::size_t>(cl.representative)], f,
                       schedule, opts.est.tail_fraction)
              .fstar_hat);
    rep.clusters.push_back(std::move(cl));
  }
  std::sort(rep.clusters.begin(), rep.clusters.end(),
            [](const ClusterRow& a, const ClusterRow& b) {
              return a.mass != b.mass ? a.mass > b.mass
                                      : a.representative < b.representative;
            });
  double npts = static_cast<double>(pts.size());
  rep.nf_fraction = rep.clusters.empty() ? 0.0 : rep.clusters.front().mass;
  rep.abstention_rate = (npts - static_cast<double>(rep.num_generic)) / npts;
  // a cluster above threshold is a physical-measure candidate; its absence at
  // finite sampling never certifies nonexistence
  if (!rep.clusters.empty()) {
    rep.verdict.status = Status::Holds;
    rep.verdict.margin = rep.clusters.front().mass - opts.mass_threshold;
  } else {
    rep.verdict.status = Status::Inconclusive;
    rep.verdict.diagnostics = "no cluster reached the mass threshold";
  }
  return rep;
}

}  // namespace orbitdist
