#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/geometry.hpp"

namespace coverplan {

// A planning problem: the objects to observe, the takeoff point, the
// observation parameters and the map bounds the objects were drawn in.
struct Instance {
  double map_side = 120.0;
  double padding = 10.0;
  std::vector<RectObject> objects;
  Point2D start;
  ObservationParams params;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(objects.size()); }

  std::vector<Side> sides() const {
    std::vector<Side> out;
    out.reserve(4 * objects.size());
    for (const RectObject& o : objects)
      for (const Side& s : sides_of(o)) out.push_back(s);
    return out;
  }

  double diagonal() const { return map_side * std::sqrt(2.0); }
};

inline void validate_instance(const Instance& inst) {
  const auto& p = inst.params;
  if (!(p.theta > 0.0) || !(p.theta < 2.0 * std::atan(1.0) /* pi/2 */))
    throw InvalidParameter("observation angle must lie in (0, pi/2)");
  if (!(p.d_min >= 0.0) || !(p.d_min < p.d_max))
    throw InvalidParameter("need 0 <= d_min < d_max");
  if (!(p.perception_radius > 0.0)) throw InvalidParameter("perception radius must be positive");
  for (std::size_t i = 0; i < inst.objects.size(); ++i) {
    const RectObject& o = inst.objects[i];
    if (o.id != static_cast<int>(i)) throw InvalidParameter("object ids must be 0..n-1 in order");
    if (!(o.length > 0.0) || !(o.width > 0.0))
      throw InvalidParameter("object extents must be positive");
    if (!std::isfinite(o.center.x) || !std::isfinite(o.center.y))
      throw InvalidParameter("object center must be finite");
  }
  if (!std::isfinite(inst.start.x) || !std::isfinite(inst.start.y))
    throw InvalidParameter("start must be finite");
}

}  // namespace coverplan
