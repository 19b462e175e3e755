#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orbitdist/estimator.hpp"
#include "orbitdist/rng.hpp"

namespace orbitdist {

struct PartitionCover {
  double eps = 0.0;
  long num_cells = 0;
  std::vector<double> freq_x;  // empirical cell frequencies of the two orbits
  std::vector<double> freq_y;
  std::vector<double> a;       // per-cell min of the two frequencies
  double covered_mass = 0.0;   // sum of a
};

// Regular bins of width <= eps on the interval or circle with per-orbit
// occupancy at horizon n; shift spaces are rejected (no canonical 1-D
// binning). The same arithmetic serves the liminf variant: compute the cover
// along whichever horizons the subsequence of interest selects.
PartitionCover partition_cover(const SystemSpec& spec, const SpacePoint& x,
                               const SpacePoint& y, long n, double eps);

// eps * covered_mass + diameter * (1 - covered_mass)
double prop34_bound(const PartitionCover& cover, double diameter);

struct EquicontinuityScan {
  std::vector<double> deltas;            // ascending
  std::vector<double> modulus;           // monotonized (cumulative max)
  std::vector<double> contrast_modulus;  // same for the non-permuted gap
  std::vector<double> raw_modulus;       // per-rung maxima before monotonizing
  std::vector<double> raw_contrast;
};

struct ScanOptions {
  long grid_size = 16;
  std::uint64_t seed = 1;
  EstimatorOptions est;
};

// Weak-mean-equicontinuity scan: modulus(delta) = max over sampled pairs
// within delta of fbar_hat; contrast_modulus uses the tail max of the
// non-permuted mean gap. Pairs at each rung are (grid point, partner at
// distance just under delta); partners carry a full-precision jitter so that
// exact-linear families do not see atypical short dyadics.
EquicontinuityScan wme_scan(const SystemSpec& spec, const std::vector<double>& deltas,
                            const Schedule& schedule, const ScanOptions& opts = {});

struct ContinuityScan {
  std::string observable;
  std::vector<double> deltas;    // ascending
  std::vector<double> modulus;   // monotonized max |fstar(x) - fstar(partner)|
  std::vector<double> raw_modulus;
  bool discontinuity_flag = false;  // modulus at the smallest delta > floor
  double flag_floor = 0.1;
};

// Continuity scan of the estimated time average of one observable.
ContinuityScan ta_continuity_scan(const SystemSpec& spec, const Observable& f,
                                  const std::vector<double>& deltas,
                                  const Schedule& schedule,
                                  const ScanOptions& opts = {},
                                  double flag_floor = 0.1);

enum class SamplerKind { Lebesgue, Atomic, OrbitTail };

struct SamplerSpec {
  SamplerKind kind = SamplerKind::Lebesgue;
  // atomic
  std::vector<std::string> atoms;  // coordinates (decimal or p/q) or symbol strings
  std::vector<double> weights;
  // orbit tail
  std::string base = "0";
  long burn_in = 1000;
  long stride = 17;
};

// Draw one point; `horizon` sizes precision/window, `k` indexes orbit-tail draws.
SpacePoint sample_point(const SystemSpec& spec, const SamplerSpec& sampler,
                        Rng& rng, long horizon, long k);

struct PairRow {
  long index = 0;
  Verdict verdict;
  double fbar_hat = 0.0, funder_hat = 0.0, spread = 0.0;
  double x_coord = 0.0, y_coord = 0.0;  // double views (projection on shift)
};

struct ClusterRow {
  std::vector<long> members;
  double mass = 0.0;
  long representative = 0;
  std::vector<double> fingerprint;  // battery time averages of the representative
};

struct MeasureProbeReport {
  std::string probe;
  Verdict verdict;
  std::vector<PairRow> pairs;
  std::optional<long> witness;       // failing pair index
  double nf_fraction = 0.0;
  double abstention_rate = 0.0;
  bool consistent_flag = false;      // ergodicity: nf_fraction >= 1 - 2*abstention
  std::vector<ClusterRow> clusters;  // physical probes
  long num_generic = 0;
};

struct ProbeOptions {
  long num_pairs = 20;
  std::uint64_t seed = 1;
  EstimatorOptions est;
  bool adversarial = true;  // include family fixed points paired with a sample
};

// Unique ergodicity: holds iff every sampled pair's membership holds; fails
// with a witness as soon as one pair fails.
MeasureProbeReport unique_ergodicity_probe(const SystemSpec& spec,
                                           const Schedule& schedule,
                                           const ProbeOptions& opts = {});

// Ergodicity of a sampled measure: nf-fraction over pairs drawn iid from the
// sampler, with abstentions (inconclusive) reported.
MeasureProbeReport ergodicity_probe(const SystemSpec& spec, const SamplerSpec& sampler,
                                    const Schedule& schedule,
                                    const ProbeOptions& opts = {});

struct PhysicalOptions {
  long num_points = 24;
  double mass_threshold = 0.05;
  std::uint64_t seed = 1;
  EstimatorOptions est;
  double genericity_tol = 0.05;
};

// Physical-measure probe: sample reference-measure points, keep the generic
// ones, single-linkage cluster them by pairwise membership, report clusters
// above the mass threshold with time-average fingerprints.
MeasureProbeReport physical_probe(const SystemSpec& spec, const SamplerSpec& sampler,
                                  const Schedule& schedule,
                                  const PhysicalOptions& opts = {});

// Family-specific adversarial base points (fixed points, the branch cycle).
std::vector<SpacePoint> adversarial_points(const SystemSpec& spec, long horizon);

}  // namespace orbitdist
