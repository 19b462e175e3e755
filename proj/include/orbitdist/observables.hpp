#pragma once

#include <functional>
#include <string>
#include <vector>

#include "orbitdist/space.hpp"

namespace orbitdist {

struct Observable {
  std::string name;
  std::function<double(const SpacePoint&)> eval;
};

// Coordinate function for 1-D spaces; base-A digit projection on shift spaces.
Observable coordinate_observable(const MetricSpaceDescriptor& space);

// Named battery used by the genericity probe: coordinate, 8 cell indicators
// (dyadic eighths on 1-D spaces, cylinders on shift spaces), 4 smooth bumps
// centered at the odd multiples of 1/8.
std::vector<Observable> default_battery(const MetricSpaceDescriptor& space);

// Lookup by name within the battery ("coordinate", "cell-3", "bump-0.375",
// "cyl-1", ...); throws ConfigError if absent.
Observable battery_observable(const MetricSpaceDescriptor& space,
                              const std::string& name);

}  // namespace orbitdist
