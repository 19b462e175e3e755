#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "orbitdist/real.hpp"

namespace orbitdist {

enum class SpaceKind { Interval, Circle, Shift };

std::string space_kind_name(SpaceKind k);
SpaceKind space_kind_from_name(const std::string& name);

struct MetricSpaceDescriptor {
  SpaceKind kind = SpaceKind::Interval;
  std::uint32_t alphabet_size = 2;  // shift spaces only

  double diameter() const {
    switch (kind) {
      case SpaceKind::Interval: return 1.0;
      case SpaceKind::Circle: return 0.5;
      case SpaceKind::Shift: return 1.0;
    }
    return 1.0;
  }
};

MetricSpaceDescriptor make_interval();
MetricSpaceDescriptor make_circle();
MetricSpaceDescriptor make_shift(std::uint32_t alphabet_size);

// A point of one of the three spaces. 1-D points hold an arbitrary-precision
// coordinate; shift points hold a view (offset) into a shared symbol stream,
// so orbit segments of a stream are cheap suffix windows.
struct SpacePoint {
  SpaceKind kind = SpaceKind::Interval;
  Real coord;  // interval/circle
  std::shared_ptr<const std::vector<std::uint32_t>> stream;  // shift
  std::size_t offset = 0;

  std::size_t window_length() const {
    return stream && stream->size() > offset ? stream->size() - offset : 0;
  }
};

SpacePoint make_point(const MetricSpaceDescriptor& space, Real coord);
SpacePoint make_point(const MetricSpaceDescriptor& space, double coord);
SpacePoint make_shift_point(const MetricSpaceDescriptor& space,
                            std::vector<std::uint32_t> symbols,
                            std::size_t offset = 0);

// Correctly-rounded double view of a 1-D coordinate; rejects shift points.
double coordinate_view(const SpacePoint& p);

// Interval: |p-q|. Circle: min(|p-q|, 1-|p-q|). Shift: 2^-j at the first
// differing index of the compared windows (0 if they agree throughout).
// Rejects points whose space kinds disagree with the descriptor.
double distance(const MetricSpaceDescriptor& space, const SpacePoint& a,
                const SpacePoint& b);

// Distance on raw double coordinates; hot path for the 1-D solvers.
inline double distance_interval(double a, double b) {
  return a >= b ? a - b : b - a;
}
inline double distance_circle(double a, double b) {
  double t = a >= b ? a - b : b - a;
  return t <= 0.5 ? t : 1.0 - t;
}

}  // namespace orbitdist
