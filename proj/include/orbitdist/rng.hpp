#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orbitdist/real.hpp"

namespace orbitdist {

// Deterministic RNG. Uniform doubles are assembled from raw engine words
// (never via std::uniform_real_distribution, whose output is
// implementation-defined), so identical seeds give identical streams on any
// platform. Distinct stream ids decorrelate the independent draws of one run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(seed * 0x9E3779B97F4A7C15ull + stream * 0xBF58476D1CE4E5B9ull + 1ull) {}

  std::uint64_t word() { return eng_(); }

  double unit() { return static_cast<double>(word() >> 11) * 0x1.0p-53; }

  std::uint64_t index(std::uint64_t n) {  // uniform in [0, n), n > 0
    std::uint64_t lim = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t w;
    do { w = word(); } while (w >= lim);
    return w % n;
  }

  // Uniform dyadic in [0,1) carrying at least `prec` bits of entropy. Points
  // with fewer entropy bits than the orbit horizon collapse to fixed points
  // under exact-linear expanding maps, so Lebesgue sampling must use this.
  Real unit_real(long prec) {
    long chunks = (prec + 63) / 64;
    Real r(64 * chunks);  // word-aligned so every add below is exact
    Real w(64 * chunks);
    mpfr_set_zero(r.get(), 1);
    for (long i = 0; i < chunks; ++i) {
      mpfr_set_uj(w.get(), word(), MPFR_RNDN);
      mpfr_div_2ui(w.get(), w.get(), 64u * static_cast<unsigned long>(i + 1), MPFR_RNDN);
      mpfr_add(r.get(), r.get(), w.get(), MPFR_RNDN);
    }
    return r;
  }

  std::vector<std::uint32_t> symbol_stream(std::size_t len, std::uint32_t alphabet) {
    std::vector<std::uint32_t> s(len);
    for (auto& v : s) v = static_cast<std::uint32_t>(index(alphabet));
    return s;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace orbitdist
