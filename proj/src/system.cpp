#include "orbitdist/system.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

std::string family_name(Family f) {
  switch (f) {
    case Family::Identity: return "identity";
    case Family::Rotation: return "rotation";
    case Family::Doubling: return "doubling";
    case Family::Tent: return "tent";
    case Family::Logistic: return "logistic";
    case Family::PaperS1: return "paper-s1";
    case Family::FullShift: return "full-shift";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "identity") return Family::Identity;
  if (name == "rotation") return Family::Rotation;
  if (name == "doubling") return Family::Doubling;
  if (name == "tent") return Family::Tent;
  if (name == "logistic") return Family::Logistic;
  if (name == "paper-s1") return Family::PaperS1;
  if (name == "full-shift") return Family::FullShift;
  throw ConfigError("unknown system family: " + name);
}

SystemSpec make_system(Family family, std::optional<double> param,
                       bool golden_alpha, std::uint32_t alphabet_size,
                       PrecisionPolicy policy) {
  SystemSpec s;
  s.family = family;
  s.policy = policy;
  if (const char* env = std::getenv("ORBITDIST_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) s.policy.max_bits = v;
  }
  switch (family) {
    case Family::Identity:
      s.space = make_interval();
      break;
    case Family::Rotation:
      s.space = make_circle();
      s.golden_alpha = golden_alpha;
      if (!golden_alpha) {
        if (!param) throw ConfigError("rotation needs alpha");
        if (*param < 0.0 || *param >= 1.0)
          throw ConfigError("rotation alpha must lie in [0,1)");
        s.param = *param;
      }
      break;
    case Family::Doubling:
      s.space = make_circle();
      break;
    case Family::Tent:
      s.space = make_interval();
      if (!param) throw ConfigError("tent needs a slope");
      if (*param <= 0.0 || *param > 2.0)
        throw ConfigError("tent slope must lie in (0,2]");
      s.param = *param;
      break;
    case Family::Logistic:
      s.space = make_interval();
      if (!param) throw ConfigError("logistic needs parameter r");
      if (*param <= 0.0 || *param > 4.0)
        throw ConfigError("logistic parameter r must lie in (0,4]");
      s.param = *param;
      break;
    case Family::PaperS1:
      s.space = make_circle();
      break;
    case Family::FullShift:
      s.space = make_shift(alphabet_size);
      break;
  }
  return s;
}

double lipschitz_constant(const SystemSpec& spec) {
  switch (spec.family) {
    case Family::Identity: return 1.0;
    case Family::Rotation: return 1.0;
    case Family::Doubling: return 2.0;
    case Family::Tent: return spec.param;
    case Family::Logistic: return spec.param;
    case Family::PaperS1: return 2.0;
    case Family::FullShift: return 2.0;
  }
  return 1.0;
}

long required_precision(const SystemSpec& spec, long n) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  double L = lipschitz_constant(spec);
  if (L <= 1.0) return std::max<long>(128, spec.policy.guard_bits + 64);
  double bits = static_cast<double>(n) * std::log2(L);
  return static_cast<long>(std::ceil(bits - 1e-9)) + spec.policy.guard_bits;
}

namespace {

// All map evaluations run in-place at the precision of x with nearest-even
// rounding; the per-step rounding counts feed the certified error bound.

void apply_rotation(mpfr_ptr x, mpfr_srcptr alpha) {
  mpfr_add(x, x, alpha, MPFR_RNDN);
  if (mpfr_cmp_ui(x, 1) >= 0) mpfr_sub_ui(x, x, 1, MPFR_RNDN);  // exact
}

void apply_doubling(mpfr_ptr x) {
  mpfr_mul_2ui(x, x, 1, MPFR_RNDN);  // exact
  if (mpfr_cmp_ui(x, 1) >= 0) mpfr_sub_ui(x, x, 1, MPFR_RNDN);  // exact
}

void apply_tent(mpfr_ptr x, mpfr_srcptr slope, mpfr_ptr t) {
  mpfr_ui_sub(t, 1, x, MPFR_RNDN);
  if (mpfr_cmp(t, x) < 0) mpfr_swap(x, t);
  mpfr_mul(x, x, slope, MPFR_RNDN);
  if (mpfr_cmp_ui(x, 1) > 0) mpfr_set_ui(x, 1, MPFR_RNDN);  // clamp rounding spill
}

void apply_logistic(mpfr_ptr x, mpfr_srcptr r, mpfr_ptr t) {
  mpfr_ui_sub(t, 1, x, MPFR_RNDN);
  mpfr_mul(x, x, t, MPFR_RNDN);
  mpfr_mul(x, x, r, MPFR_RNDN);
  if (mpfr_cmp_ui(x, 1) > 0) mpfr_set_ui(x, 1, MPFR_RNDN);
  if (mpfr_sgn(x) < 0) mpfr_set_zero(x, 1);
}

// T(x) = 1 - 2(x-1/2)^2 on [0,1/2), 1/2 - 2(x-1)^2 on [1/2,1), mod 1.
void apply_paper_s1(mpfr_ptr x, mpfr_ptr t) {
  if (mpfr_cmp_d(x, 0.5) < 0) {
    mpfr_sub_d(t, x, 0.5, MPFR_RNDN);
    mpfr_sqr(t, t, MPFR_RNDN);
    mpfr_mul_2ui(t, t, 1, MPFR_RNDN);
    mpfr_ui_sub(x, 1, t, MPFR_RNDN);
  } else {
    mpfr_sub_ui(t, x, 1, MPFR_RNDN);  // exact for x in [1/2, 1)
    mpfr_sqr(t, t, MPFR_RNDN);
    mpfr_mul_2ui(t, t, 1, MPFR_RNDN);
    mpfr_d_sub(x, 0.5, t, MPFR_RNDN);
  }
  if (mpfr_cmp_ui(x, 1) >= 0) mpfr_sub_ui(x, x, 1, MPFR_RNDN);
  if (mpfr_sgn(x) < 0) mpfr_add_ui(x, x, 1, MPFR_RNDN);
}

Real rotation_alpha(const SystemSpec& spec, long prec) {
  Real a(prec);
  if (spec.golden_alpha) {
    mpfr_sqrt_ui(a.get(), 5, MPFR_RNDN);
    mpfr_sub_ui(a.get(), a.get(), 1, MPFR_RNDN);
    mpfr_div_2ui(a.get(), a.get(), 1, MPFR_RNDN);
  } else {
    mpfr_set_d(a.get(), spec.param, MPFR_RNDN);
  }
  return a;
}

// Certified distance error after h steps at precision p: per-step injections
// of c*2^-p amplified by the Lipschitz constant, summed in log2 space so the
// estimate never overflows. Doubling and identity are exact (c = 0).
double error_bound_1d(const SystemSpec& spec, long h, long p) {
  if (h <= 0) return 0.0;
  double c;
  switch (spec.family) {
    case Family::Identity: return 0.0;
    case Family::Doubling: return 0.0;
    case Family::Rotation: c = 4.0; break;  // add + alpha representation drift
    case Family::Tent: c = 4.0; break;
    case Family::Logistic: c = 6.0; break;
    case Family::PaperS1: c = 6.0; break;
    default: return 0.0;
  }
  double L = lipschitz_constant(spec);
  double log2_growth;
  if (L > 1.0) {
    // sum_{k<h} L^k <= L^h / (L-1)
    log2_growth = static_cast<double>(h) * std::log2(L) - std::log2(L - 1.0);
  } else {
    log2_growth = std::log2(static_cast<double>(h));
  }
  double log2_err = std::log2(c) + log2_growth - static_cast<double>(p);
  if (log2_err > 0.0) return spec.space.diameter();
  return std::min(spec.space.diameter(), std::exp2(log2_err));
}

}  // namespace

SpacePoint step(const SystemSpec& spec, const SpacePoint& p) {
  if (p.kind != spec.space.kind)
    throw std::invalid_argument("point does not belong to the system's space");
  if (spec.family == Family::FullShift) {
    if (p.window_length() < 2)
      throw PrecisionError("symbol window exhausted");
    SpacePoint q = p;
    q.offset += 1;
    return q;
  }
  SpacePoint q = p;
  long prec = q.coord.precision();
  Real t(prec);
  switch (spec.family) {
    case Family::Identity: break;
    case Family::Rotation: {
      Real a = rotation_alpha(spec, prec);
      apply_rotation(q.coord.get(), a.get());
      break;
    }
    case Family::Doubling: apply_doubling(q.coord.get()); break;
    case Family::Tent: {
      Real s = Real::from_double(spec.param, prec);
      apply_tent(q.coord.get(), s.get(), t.get());
      break;
    }
    case Family::Logistic: {
      Real r = Real::from_double(spec.param, prec);
      apply_logistic(q.coord.get(), r.get(), t.get());
      break;
    }
    case Family::PaperS1: apply_paper_s1(q.coord.get(), t.get()); break;
    case Family::FullShift: break;
  }
  return q;
}

OrbitSegment orbit_segment(const SystemSpec& spec, const SpacePoint& base,
                           long n, long start_index) {
  if (n < 1) throw std::invalid_argument("orbit length must be >= 1");
  if (start_index < 0) throw std::invalid_argument("start index must be >= 0");
  if (base.kind != spec.space.kind)
    throw std::invalid_argument("base point does not belong to the system's space");

  long horizon = start_index + n - 1;
  OrbitSegment seg;
  seg.system = spec;
  seg.base = base;
  seg.start_index = start_index;
  seg.length = n;
  seg.points.reserve(static_cast<std::size_t>(n));

  if (spec.family == Family::FullShift) {
    std::size_t need = static_cast<std::size_t>(horizon) + 1;
    if (base.window_length() < need + 1)
      throw PrecisionError("symbol window shorter than the orbit horizon");
    for (long j = 0; j < n; ++j) {
      SpacePoint q = base;
      q.offset += static_cast<std::size_t>(start_index + j);
      seg.points.push_back(std::move(q));
    }
    std::size_t remaining = base.window_length() - need;
    seg.precision_bits_used = static_cast<long>(remaining);
    seg.error_bound = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(remaining, 1074)));
    return seg;
  }

  // Never narrow a caller-supplied high-precision base: narrowing would break
  // the exactness claims of the linear families.
  long prec = std::max(required_precision(spec, std::max<long>(horizon, 1)) + 8,
                       base.coord.precision() + 8);
  if (prec > spec.policy.max_bits)
    throw PrecisionError("precision budget exhausted: orbit needs " +
                         std::to_string(prec) + " bits, ceiling is " +
                         std::to_string(spec.policy.max_bits));

  Real x = base.coord;
  x.set_precision(prec);  // widening: exact
  Real t(prec);
  Real alpha = spec.family == Family::Rotation ? rotation_alpha(spec, prec) : Real(64);
  Real param(64);
  if (spec.family == Family::Tent || spec.family == Family::Logistic)
    param = Real::from_double(spec.param, prec);

  seg.coords_.reserve(static_cast<std::size_t>(n));
  for (long k = 1; k <= horizon; ++k) {
    switch (spec.family) {
      case Family::Identity: break;
      case Family::Rotation: apply_rotation(x.get(), alpha.get()); break;
      case Family::Doubling: apply_doubling(x.get()); break;
      case Family::Tent: apply_tent(x.get(), param.get(), t.get()); break;
      case Family::Logistic: apply_logistic(x.get(), param.get(), t.get()); break;
      case Family::PaperS1: apply_paper_s1(x.get(), t.get()); break;
      case Family::FullShift: break;
    }
    if (k >= start_index) {
      SpacePoint q;
      q.kind = spec.space.kind;
      q.coord = x;
      seg.points.push_back(std::move(q));
      seg.coords_.push_back(x.to_double());
    }
  }
  // start_index 0 records the base itself as the first point
  if (start_index == 0) {
    seg.points.insert(seg.points.begin(), base);
    seg.coords_.insert(seg.coords_.begin(), base.coord.to_double());
  }
  seg.precision_bits_used = prec;
  seg.error_bound = error_bound_1d(spec, horizon, prec);
  return seg;
}

}  // namespace orbitdist
