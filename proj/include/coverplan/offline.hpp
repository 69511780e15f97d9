#pragma once

#include <algorithm>
#include <vector>

#include "coverplan/discretize.hpp"
#include "coverplan/errors.hpp"
#include "coverplan/graph.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/steiner.hpp"
#include "coverplan/tour.hpp"

namespace coverplan {

struct OfflinePlan {
  Tour tour;
  std::vector<int> selected_points;  // viewpoint ids visited by the tour
  double lb = 0.0;                   // max(D, T_left / 2)
  double ratio_bound = 0.0;          // (1 + epsilon) * (2 + 2n)
  double t_left_cost = 0.0;
  double removed_weight = 0.0;
  double max_dist = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;
  bool matching_exact = true;
  int steiner_leaf_repairs = 0;
  int num_candidate_points = 0;
};

// Pipeline body shared by the offline planner and the online policies (which
// run it over the initially known objects with a frozen mesh pitch):
// mesh -> graph -> Steiner tree over {start, midpoints} -> trim -> tour.
inline OfflinePlan plan_with_mesh(const std::vector<RectObject>& objects, Point2D start,
                                  const ObservationParams& params, double epsilon, double delta,
                                  double max_dist) {
  std::vector<Side> sides;
  sides.reserve(4 * objects.size());
  for (const RectObject& o : objects)
    for (const Side& s : sides_of(o)) sides.push_back(s);

  std::vector<ObservationPoint> points = generate_observation_points(objects, params, delta);
  const int num_points = static_cast<int>(points.size());
  CoverageGraph g = build_graph(std::move(points), sides, start, max_dist);

  std::vector<int> terminals;
  terminals.push_back(g.start_vertex());
  for (int i = 0; i < g.num_sides(); ++i) terminals.push_back(g.midpoint_vertex(i));
  const SteinerTree st = steiner_tree(g, terminals);
  const TrimResult tr = trim(st, g);

  std::vector<Point2D> selected_pos;
  selected_pos.reserve(tr.selected_points.size());
  for (int id : tr.selected_points) selected_pos.push_back(g.point(id).pos);
  const ChristofidesResult ch = christofides_detail(selected_pos, start);

  OfflinePlan plan;
  plan.tour = ch.tour;
  plan.selected_points = tr.selected_points;
  plan.t_left_cost = tr.t_left_cost;
  plan.removed_weight = tr.removed_weight;
  plan.max_dist = max_dist;
  plan.delta = delta;
  plan.epsilon = epsilon;
  plan.lb = std::max(max_dist, tr.t_left_cost / 2.0);
  plan.ratio_bound = (1.0 + epsilon) * (2.0 + 2.0 * static_cast<double>(objects.size()));
  plan.matching_exact = ch.matching_exact;
  plan.steiner_leaf_repairs = st.leaf_repairs;
  plan.num_candidate_points = num_points;
  return plan;
}

inline OfflinePlan plan_offline(const Instance& inst, double epsilon) {
  if (inst.n() < 2) throw InstanceTooSmall("offline planning needs at least 2 objects");
  const double max_dist = max_object_distance(inst.objects);
  const double delta = mesh_granularity(epsilon, inst.n(), max_dist);
  return plan_with_mesh(inst.objects, inst.start, inst.params, epsilon, delta, max_dist);
}

// Sides not observed from any of the given positions (independent re-check
// used on emitted waypoint lists and traces).
inline std::vector<int> unobserved_sides(const std::vector<Side>& sides,
                                         const std::vector<Point2D>& positions,
                                         const ObservationParams& params) {
  std::vector<int> missing;
  for (const Side& s : sides) {
    bool seen = false;
    for (const Point2D& p : positions) {
      if (efficiently_observes(p, s, params)) {
        seen = true;
        break;
      }
    }
    if (!seen) missing.push_back(s.id);
  }
  return missing;
}

inline bool observes_all_sides(const std::vector<Side>& sides,
                               const std::vector<Point2D>& positions,
                               const ObservationParams& params) {
  return unobserved_sides(sides, positions, params).empty();
}

}  // namespace coverplan
