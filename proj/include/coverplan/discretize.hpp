#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/geometry.hpp"

namespace coverplan {

// A mesh point together with the side ids it efficiently observes.
struct ObservationPoint {
  int id = -1;
  Point2D pos;
  std::vector<int> covers;  // sorted side ids, nonempty
};

struct MeshSpec {
  double epsilon = 0.0;
  double max_dist = 0.0;  // D, max center-to-center distance
  int n = 0;
  double delta = 0.0;  // epsilon * D / (4n)
};

inline double max_object_distance(const std::vector<RectObject>& objects) {
  if (objects.size() < 2)
    throw InstanceTooSmall("need at least 2 objects to measure the max object distance");
  double best = 0.0;
  for (std::size_t i = 0; i < objects.size(); ++i)
    for (std::size_t j = i + 1; j < objects.size(); ++j)
      best = std::max(best, distance(objects[i].center, objects[j].center));
  return best;
}

inline double mesh_granularity(double epsilon, int n, double max_dist) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  if (n < 2) throw InvalidParameter("mesh granularity needs at least 2 objects");
  if (!(max_dist > 0.0)) throw InvalidParameter("max object distance must be positive");
  return epsilon * max_dist / (4.0 * n);
}

inline MeshSpec make_mesh_spec(double epsilon, const std::vector<RectObject>& objects) {
  MeshSpec spec;
  spec.epsilon = epsilon;
  spec.n = static_cast<int>(objects.size());
  spec.max_dist = max_object_distance(objects);
  spec.delta = mesh_granularity(epsilon, spec.n, spec.max_dist);
  return spec;
}

// Key for merging mesh points that coincide up to 1e-9 m.
inline std::pair<std::int64_t, std::int64_t> coord_key(Point2D p) {
  return {std::llround(p.x * 1e9), std::llround(p.y * 1e9)};
}

// Grid one object's padded rectangle (width d_max on each of the four sides,
// anchored at the padded lower-left corner) and keep the points that observe
// at least one side of any object. Points strictly inside an object are
// discarded: the vehicle cannot hover there.
inline std::vector<ObservationPoint> points_for_object(const RectObject& obj,
                                                       const std::vector<RectObject>& all_objects,
                                                       const std::vector<Side>& all_sides,
                                                       const ObservationParams& params,
                                                       double delta) {
  if (!(delta > 0.0)) throw InvalidParameter("mesh pitch must be positive");
  const double x0 = obj.center.x - obj.length / 2.0 - params.d_max;
  const double y0 = obj.center.y - obj.width / 2.0 - params.d_max;
  const double wx = obj.length + 2.0 * params.d_max;
  const double wy = obj.width + 2.0 * params.d_max;
  const int nx = static_cast<int>(std::floor(wx / delta + 1e-12));
  const int ny = static_cast<int>(std::floor(wy / delta + 1e-12));
  std::vector<ObservationPoint> out;
  for (int i = 0; i <= nx; ++i) {
    for (int j = 0; j <= ny; ++j) {
      const Point2D p{x0 + i * delta, y0 + j * delta};
      if (inside_any_object(p, all_objects)) continue;
      std::vector<int> covers;
      for (const Side& s : all_sides)
        if (efficiently_observes(p, s, params)) covers.push_back(s.id);
      if (covers.empty()) continue;
      out.push_back(ObservationPoint{-1, p, std::move(covers)});
    }
  }
  return out;
}

// Union of the per-object grids, deduplicated by coordinate. Throws
// SideUncoverable when some side ends up with no candidate viewpoint
// (the pitch is too coarse or the frustum is empty).
inline std::vector<ObservationPoint> generate_observation_points(
    const std::vector<RectObject>& objects, const ObservationParams& params, double delta) {
  std::vector<Side> all_sides;
  all_sides.reserve(4 * objects.size());
  for (const RectObject& o : objects)
    for (const Side& s : sides_of(o)) all_sides.push_back(s);

  std::vector<ObservationPoint> merged;
  std::map<std::pair<std::int64_t, std::int64_t>, int> by_coord;
  for (const RectObject& o : objects) {
    for (ObservationPoint& p : points_for_object(o, objects, all_sides, params, delta)) {
      const auto key = coord_key(p.pos);
      auto it = by_coord.find(key);
      if (it == by_coord.end()) {
        p.id = static_cast<int>(merged.size());
        by_coord.emplace(key, p.id);
        merged.push_back(std::move(p));
      } else {
        std::vector<int>& covers = merged[it->second].covers;
        std::vector<int> unioned;
        std::set_union(covers.begin(), covers.end(), p.covers.begin(), p.covers.end(),
                       std::back_inserter(unioned));
        covers = std::move(unioned);
      }
    }
  }

  // side ids are global (4 * object id + k), so objects passed as a subset
  // keep sparse ids; the check is keyed by id, not position
  std::set<int> covered;
  for (const ObservationPoint& p : merged) covered.insert(p.covers.begin(), p.covers.end());
  for (const Side& s : all_sides)
    if (covered.count(s.id) == 0)
      throw SideUncoverable("no observation point covers side " + std::to_string(s.id) +
                            " at pitch " + std::to_string(delta));
  return merged;
}

}  // namespace coverplan
