#pragma once

#include <mpfr.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbitdist {

// Value-semantic MPFR real. Each value carries its own precision; arithmetic
// helpers round to the precision of the destination (nearest-even).
class Real {
 public:
  explicit Real(long prec = 128) {
    if (prec < MPFR_PREC_MIN) prec = MPFR_PREC_MIN;
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real from_double(double d, long prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }

  // Accepts plain decimals ("0.25", "1e-4") and fractions ("1/3").
  static Real from_string(const std::string& s, long prec) {
    Real r(prec);
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      Real den(prec);
      if (mpfr_set_str(r.v_, s.substr(0, slash).c_str(), 10, MPFR_RNDN) != 0 ||
          mpfr_set_str(den.v_, s.substr(slash + 1).c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("unparseable real: " + s);
      mpfr_div(r.v_, r.v_, den.v_, MPFR_RNDN);
      return r;
    }
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw std::invalid_argument("unparseable real: " + s);
    return r;
  }

  long precision() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // Exact if the current value fits the new precision (it does for widening).
  void set_precision(long prec) {
    Real tmp(prec);
    mpfr_set(tmp.v_, v_, MPFR_RNDN);
    mpfr_swap(v_, tmp.v_);
  }

  int cmp(const Real& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp_d(double d) const { return mpfr_cmp_d(v_, d); }
  int sign() const { return mpfr_sgn(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace orbitdist
