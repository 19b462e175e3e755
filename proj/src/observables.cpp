#include "orbitdist/observables.hpp"

#include <cmath>
#include <stdexcept>

#include "orbitdist/errors.hpp"

namespace orbitdist {

namespace {

double digit_projection(const SpacePoint& p, double alphabet) {
  const auto& s = *p.stream;
  double acc = 0.0, scale = 1.0;
  for (std::size_t i = p.offset; i < s.size() && i < p.offset + 64; ++i) {
    scale /= alphabet;
    acc += s[i] * scale;
  }
  return acc;
}

// C^inf bump supported on (c-w, c+w), peak 1 at c.
double bump(double dist, double w) {
  double t = dist / w;
  if (t >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

std::uint32_t symbol_at(const SpacePoint& p, std::size_t j) {
  const auto& s = *p.stream;
  return p.offset + j < s.size() ? s[p.offset + j] : 0;
}

}  // namespace

Observable coordinate_observable(const MetricSpaceDescriptor& space) {
  if (space.kind == SpaceKind::Shift) {
    double a = static_cast<double>(space.alphabet_size);
    return {"coordinate", [a](const SpacePoint& p) { return digit_projection(p, a); }};
  }
  return {"coordinate", [](const SpacePoint& p) { return coordinate_view(p); }};
}

std::vector<Observable> default_battery(const MetricSpaceDescriptor& space) {
  std::vector<Observable> out;
  out.push_back(coordinate_observable(space));
  if (space.kind == SpaceKind::Shift) {
    // cell indicators: single-symbol cylinders, then length-2 cylinders in
    // lexicographic order until 8 observables
    std::uint32_t a = space.alphabet_size;
    std::size_t added = 0;
    for (std::uint32_t s = 0; s < a && added < 8; ++s, ++added)
      out.push_back({"cyl-" + std::to_string(s),
                     [s](const SpacePoint& p) { return symbol_at(p, 0) == s ? 1.0 : 0.0; }});
    for (std::uint32_t s0 = 0; s0 < a && added < 8; ++s0)
      for (std::uint32_t s1 = 0; s1 < a && added < 8; ++s1, ++added)
        out.push_back({"cyl-" + std::to_string(s0) + std::to_string(s1),
                       [s0, s1](const SpacePoint& p) {
                         return symbol_at(p, 0) == s0 && symbol_at(p, 1) == s1 ? 1.0 : 0.0;
                       }});
    double alng = static_cast<double>(a);
    for (int k = 0; k < 4; ++k) {
      double c = (2.0 * k + 1.0) / 8.0;
      out.push_back({"bump-" + std::to_string(c).substr(0, 5),
                     [c, alng](const SpacePoint& p) {
                       double x = digit_projection(p, alng);
                       return bump(std::fabs(x - c), 0.125);
                     }});
    }
    return out;
  }
  bool circle = space.kind == SpaceKind::Circle;
  for (int k = 0; k < 8; ++k) {
    double lo = k / 8.0, hi = (k + 1) / 8.0;
    bool last = k == 7;  // close the top cell so x = 1 is covered
    out.push_back({"cell-" + std::to_string(k), [lo, hi, last](const SpacePoint& p) {
                     double x = coordinate_view(p);
                     return x >= lo && (x < hi || (last && x <= hi)) ? 1.0 : 0.0;
                   }});
  }
  for (int k = 0; k < 4; ++k) {
    double c = (2.0 * k + 1.0) / 8.0;
    out.push_back({"bump-" + std::to_string(c).substr(0, 5),
                   [c, circle](const SpacePoint& p) {
                     double x = coordinate_view(p);
                     double d = circle ? distance_circle(x, c) : distance_interval(x, c);
                     return bump(d, 0.125);
                   }});
  }
  return out;
}

Observable battery_observable(const MetricSpaceDescriptor& space,
                              const std::string& name) {
  for (auto& o : default_battery(space))
    if (o.name == name) return o;
  throw ConfigError("unknown observable: " + name);
}

}  // namespace orbitdist
