#include "orbitdist/space.hpp"

#include <cmath>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

std::string space_kind_name(SpaceKind k) {
  switch (k) {
    case SpaceKind::Interval: return "interval";
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Shift: return "shift";
  }
  return "?";
}

SpaceKind space_kind_from_name(const std::string& name) {
  if (name == "interval") return SpaceKind::Interval;
  if (name == "circle") return SpaceKind::Circle;
  if (name == "shift") return SpaceKind::Shift;
  throw ConfigError("unknown space kind: " + name);
}

MetricSpaceDescriptor make_interval() { return {SpaceKind::Interval, 2}; }
MetricSpaceDescriptor make_circle() { return {SpaceKind::Circle, 2}; }

MetricSpaceDescriptor make_shift(std::uint32_t alphabet_size) {
  if (alphabet_size < 2)
    throw ConfigError("shift space needs alphabet size >= 2");
  return {SpaceKind::Shift, alphabet_size};
}

SpacePoint make_point(const MetricSpaceDescriptor& space, Real coord) {
  if (space.kind == SpaceKind::Shift)
    throw std::invalid_argument("shift points carry symbol streams, not coordinates");
  if (coord.sign() < 0 || coord.cmp_d(1.0) > 0)
    throw std::invalid_argument("coordinate outside [0,1]");
  if (space.kind == SpaceKind::Circle && coord.cmp_d(1.0) == 0)
    mpfr_set_zero(coord.get(), 1);  // circle coordinates live in [0,1)
  SpacePoint p;
  p.kind = space.kind;
  p.coord = std::move(coord);
  return p;
}

SpacePoint make_point(const MetricSpaceDescriptor& space, double coord) {
  return make_point(space, Real::from_double(coord, 128));
}

SpacePoint make_shift_point(const MetricSpaceDescriptor& space,
                            std::vector<std::uint32_t> symbols,
                            std::size_t offset) {
  if (space.kind != SpaceKind::Shift)
    throw std::invalid_argument("symbol streams only make points of shift spaces");
  if (symbols.empty() || offset >= symbols.size())
    throw std::invalid_argument("empty symbol window");
  for (auto s : symbols)
    if (s >= space.alphabet_size)
      throw std::invalid_argument("symbol outside alphabet");
  SpacePoint p;
  p.kind = SpaceKind::Shift;
  p.stream = std::make_shared<const std::vector<std::uint32_t>>(std::move(symbols));
  p.offset = offset;
  return p;
}

double coordinate_view(const SpacePoint& p) {
  if (p.kind == SpaceKind::Shift)
    throw std::invalid_argument("shift points have no scalar coordinate");
  return p.coord.to_double();
}

namespace {

double distance_1d(SpaceKind kind, const Real& a, const Real& b) {
  // One subtraction at joint precision, then correctly rounded to double.
  long prec = std::max(a.precision(), b.precision()) + 2;
  Real t(prec);
  mpfr_sub(t.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_abs(t.get(), t.get(), MPFR_RNDN);
  if (kind == SpaceKind::Interval) return t.to_double();
  Real u(prec);
  mpfr_ui_sub(u.get(), 1, t.get(), MPFR_RNDN);
  if (mpfr_cmp(u.get(), t.get()) < 0) return u.to_double();
  return t.to_double();
}

double distance_shift(const SpacePoint& a, const SpacePoint& b) {
  const auto& sa = *a.stream;
  const auto& sb = *b.stream;
  std::size_t la = sa.size() - a.offset, lb = sb.size() - b.offset;
  std::size_t m = la < lb ? la : lb;
  for (std::size_t j = 0; j < m; ++j)
    if (sa[a.offset + j] != sb[b.offset + j]) return std::ldexp(1.0, -static_cast<int>(j));
  return 0.0;
}

}  // namespace

double distance(const MetricSpaceDescriptor& space, const SpacePoint& a,
                const SpacePoint& b) {
  if (a.kind != space.kind || b.kind != space.kind)
    throw std::invalid_argument("distance between points of different space kinds");
  if (space.kind == SpaceKind::Shift) return distance_shift(a, b);
  return distance_1d(space.kind, a.coord, b.coord);
}

}  // namespace orbitdist
