#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbitdist/space.hpp"

namespace orbitdist {

enum class Family {
  Identity,   // interval
  Rotation,   // circle, x + alpha mod 1
  Doubling,   // circle, 2x mod 1
  Tent,       // interval, slope * min(x, 1-x)
  Logistic,   // interval, r * x * (1-x)
  PaperS1,    // circle, 1-2(x-1/2)^2 on [0,1/2), 1/2-2(x-1)^2 on [1/2,1)
  FullShift,  // shift space, drop leading symbol
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct PrecisionPolicy {
  long guard_bits = 64;
  long max_bits = 1 << 20;  // hard ceiling; env/config may override
};

struct SystemSpec {
  Family family = Family::Identity;
  MetricSpaceDescriptor space;
  double param = 0.0;        // rotation alpha / tent slope / logistic r
  bool golden_alpha = false; // rotation by (sqrt(5)-1)/2 at working precision
  PrecisionPolicy policy;
};

// Validates family/space compatibility and parameter ranges.
SystemSpec make_system(Family family, std::optional<double> param = std::nullopt,
                       bool golden_alpha = false,
                       std::uint32_t alphabet_size = 2,
                       PrecisionPolicy policy = {});

// Supremum of |T'| (2 for the full shift in its metric).
double lipschitz_constant(const SystemSpec& spec);

// Working precision in bits for an orbit of length n: for expanding families
// ceil(n * log2 L) + guard bits; isometric or contracting families get the
// fixed default of 128.
long required_precision(const SystemSpec& spec, long n);

// One application of the family map at the point's own precision.
SpacePoint step(const SystemSpec& spec, const SpacePoint& p);

struct OrbitSegment {
  SystemSpec system;
  SpacePoint base;
  long start_index = 1;
  long length = 0;
  std::vector<SpacePoint> points;  // T^(start_index + j)(base), j = 0..length-1
  long precision_bits_used = 0;
  double error_bound = 0.0;  // certified per-point distance error

  // Cached correctly-rounded double coordinates (1-D spaces only).
  const std::vector<double>& coords() const { return coords_; }
  std::vector<double> coords_;
};

// Orbit window (T^s x, ..., T^(s+n-1) x) with s = start_index (default 1).
// Iterates at required_precision(spec, s+n-1) plus 8 headroom bits; throws
// PrecisionError when that exceeds the policy ceiling.
OrbitSegment orbit_segment(const SystemSpec& spec, const SpacePoint& base,
                           long n, long start_index = 1);

}  // namespace orbitdist
