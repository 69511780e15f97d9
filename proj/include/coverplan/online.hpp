#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <utility>
#include <vector>

#include "coverplan/discretize.hpp"
#include "coverplan/errors.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/offline.hpp"

namespace coverplan {

struct CoverEvent {
  long step = 0;  // index into the trace
  int side = 0;   // side id
};

struct SimResult {
  double length = 0.0;
  std::vector<Point2D> trace;  // starts and ends at the instance start
  long steps = 0;
  std::vector<int> covered_order;
  std::vector<CoverEvent> events;
  bool complete = false;  // all 4n sides covered
};

// Discrete-step perception simulator. The vehicle flies in straight steps of
// half the online mesh pitch, re-perceiving after every step; objects whose
// center lies within the perception radius become known together with their
// sides and their mesh viewpoints. Sides count as covered when the vehicle
// stands at a waypoint that efficiently observes them.
//
// The mesh pitch is frozen at start and equals the offline pitch. Evaluating
// the granularity formula on the initially known map alone would only shrink
// the pitch (its max object distance cannot exceed the global one), which
// densifies the mesh quadratically without improving the error guarantee, so
// the offline pitch is used for every object discovered during the run. The
// coverage-edge weight of the known-map graphs still comes from the initially
// known map.
class OnlineSim {
public:
  OnlineSim(const Instance& inst, double epsilon)
      : inst_(inst), epsilon_(epsilon), sides_(inst.sides()) {
    if (inst_.n() < 2) throw InstanceTooSmall("online simulation needs at least 2 objects");
    validate_instance(inst_);
    max_dist_global_ = max_object_distance(inst_.objects);
    delta_offline_ = mesh_granularity(epsilon, inst_.n(), max_dist_global_);

    known_obj_.assign(inst_.objects.size(), 0);
    known_side_.assign(sides_.size() + 1, 0);
    covered_.assign(sides_.size() + 1, 0);

    uav_ = inst_.start;
    trace_.push_back(uav_);
    detect_new_objects();

    std::vector<const RectObject*> known = known_objects();
    if (known.size() >= 2) {
      double d_init = 0.0;
      for (std::size_t i = 0; i < known.size(); ++i)
        for (std::size_t j = i + 1; j < known.size(); ++j)
          d_init = std::max(d_init, distance(known[i]->center, known[j]->center));
      max_dist_used_ = d_init;
    } else {
      max_dist_used_ = max_dist_global_;
    }
    delta_online_ = delta_offline_;
    step_len_ = delta_online_ / 2.0;
    step_budget_ = static_cast<long>(1e4 * (4.0 * inst_.map_side / step_len_));
    mesh_ready_ = true;
    for (std::size_t i = 0; i < inst_.objects.size(); ++i)
      if (known_obj_[i]) add_points_of(static_cast<int>(i));
    cover_at();  // the start position itself counts as an observation stop
  }

  double online_delta() const { return delta_online_; }
  double offline_delta() const { return delta_offline_; }
  double mesh_max_dist() const { return max_dist_used_; }
  double step_length() const { return step_len_; }
  Point2D position() const { return uav_; }
  const std::vector<Point2D>& trace() const { return trace_; }
  const std::vector<ObservationPoint>& known_points() const { return points_; }

  int known_object_count() const {
    int c = 0;
    for (char k : known_obj_) c += k;
    return c;
  }

  std::vector<int> known_side_ids() const {
    std::vector<int> out;
    for (const Side& s : sides_)
      if (known_side_[s.id]) out.push_back(s.id);
    return out;
  }

  std::vector<int> uncovered_known_sides() const {
    std::vector<int> out;
    for (const Side& s : sides_)
      if (known_side_[s.id] && !covered_[s.id]) out.push_back(s.id);
    return out;
  }

  // Update knowledge from the current position.
  void perceive() { detect_new_objects(); }

  // Fly min(step, remaining) straight toward the target, record the position,
  // then perceive. Returns true on exact arrival.
  bool step_towards(Point2D target) {
    const double remaining = distance(uav_, target);
    const bool arrive = remaining <= step_len_;
    if (arrive) {
      uav_ = target;
    } else {
      const double f = step_len_ / remaining;
      uav_ = uav_ + f * (target - uav_);
    }
    trace_.push_back(uav_);
    if (static_cast<long>(trace_.size()) > step_budget_)
      throw NonTerminating("step budget exceeded; simulation is not converging");
    detect_new_objects();
    return arrive;
  }

  SimResult run_nof() {
    begin_run();
    for (;;) {
      const int side_id = nearest_uncovered_side();
      if (side_id < 0) {
        if (uav_ == inst_.start) break;
        if (step_towards(inst_.start)) cover_at();
        continue;
      }
      const int pt = nearest_point_observing(side_id);
      if (step_towards(points_[pt].pos)) cover_at();
    }
    return finish();
  }

  SimResult run_ci() {
    begin_run();
    std::vector<Point2D> path = initial_path();
    while (path.size() >= 2) {
      step_towards(path[1]);
      const bool at_next = uav_ == path[1];
      if (at_next) cover_at();
      insert_pending(path);
      if (at_next && uav_ == path[1]) path.erase(path.begin());
    }
    return finish();
  }

  SimResult run_batsp() {
    begin_run();
    std::vector<Point2D> path = initial_path();
    while (path.size() >= 2) {
      step_towards(path[1]);
      if (uav_ == path[1]) {
        cover_at();
        path.erase(path.begin());
      }
      if (!pending_.empty()) replan(path);
    }
    return finish();
  }

private:
  std::vector<const RectObject*> known_objects() const {
    std::vector<const RectObject*> out;
    for (std::size_t i = 0; i < inst_.objects.size(); ++i)
      if (known_obj_[i]) out.push_back(&inst_.objects[i]);
    return out;
  }

  const Side& side_by_id(int id) const { return sides_[id - 1]; }

  void begin_run() {
    if (run_started_) throw InvalidParameter("a simulator instance supports a single run");
    run_started_ = true;
    if (known_object_count() == 0)
      throw InvalidParameter("the start position perceives no object");
    pending_.clear();  // initial knowledge is handled by the initial plan / first targets
  }

  void detect_new_objects() {
    std::vector<int> fresh;
    for (std::size_t i = 0; i < inst_.objects.size(); ++i) {
      if (known_obj_[i]) continue;
      if (distance(inst_.objects[i].center, uav_) <= inst_.params.perception_radius + kDistTol) {
        known_obj_[i] = 1;
        fresh.push_back(static_cast<int>(i));
      }
    }
    for (int oi : fresh) {
      for (const Side& s : sides_of(inst_.objects[oi])) {
        known_side_[s.id] = 1;
        pending_.push_back(s.id);
      }
    }
    if (mesh_ready_)
      for (int oi : fresh) add_points_of(oi);
  }

  // Mesh one newly known object at the frozen online pitch and merge its
  // points into the known universe. Points are filtered against the objects
  // known at generation time; covers are evaluated against all sides so a
  // point can serve sides discovered later.
  void add_points_of(int obj_index) {
    std::vector<RectObject> known;
    for (std::size_t i = 0; i < inst_.objects.size(); ++i)
      if (known_obj_[i]) known.push_back(inst_.objects[i]);
    for (ObservationPoint& p :
         points_for_object(inst_.objects[obj_index], known, sides_, inst_.params, delta_online_)) {
      const auto key = coord_key(p.pos);
      auto it = by_coord_.find(key);
      if (it == by_coord_.end()) {
        p.id = static_cast<int>(points_.size());
        by_coord_.emplace(key, p.id);
        points_.push_back(std::move(p));
      } else {
        std::vector<int>& covers = points_[it->second].covers;
        std::vector<int> unioned;
        std::set_union(covers.begin(), covers.end(), p.covers.begin(), p.covers.end(),
                       std::back_inserter(unioned));
        covers = std::move(unioned);
      }
    }
    for (const Side& s : sides_of(inst_.objects[obj_index])) {
      bool coverable = false;
      for (const ObservationPoint& p : points_)
        if (std::binary_search(p.covers.begin(), p.covers.end(), s.id)) {
          coverable = true;
          break;
        }
      if (!coverable)
        throw SideUncoverable("discovered side " + std::to_string(s.id) +
                              " has no known observation point at the online pitch");
    }
  }

  void cover_at() {
    for (const Side& s : sides_) {
      if (!known_side_[s.id] || covered_[s.id]) continue;
      if (efficiently_observes(uav_, s, inst_.params)) {
        covered_[s.id] = 1;
        covered_order_.push_back(s.id);
        events_.push_back(CoverEvent{static_cast<long>(trace_.size()) - 1, s.id});
      }
    }
  }

  int nearest_uncovered_side() const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (const Side& s : sides_) {
      if (!known_side_[s.id] || covered_[s.id]) continue;
      const double d = distance(uav_, s.midpoint);
      if (d < bd) {
        bd = d;
        best = s.id;
      }
    }
    return best;
  }

  int nearest_point_observing(int side_id) const {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (const ObservationPoint& p : points_) {
      if (!std::binary_search(p.covers.begin(), p.covers.end(), side_id)) continue;
      const double d = distance(uav_, p.pos);
      if (d < bd) {
        bd = d;
        best = p.id;
      }
    }
    if (best < 0)
      throw SideUncoverable("no known observation point observes side " +
                            std::to_string(side_id));
    return best;
  }

  // Closed tour over the initially known map, computed with the shared
  // offline pipeline at the frozen online pitch.
  std::vector<Point2D> initial_path() {
    std::vector<RectObject> known;
    for (std::size_t i = 0; i < inst_.objects.size(); ++i)
      if (known_obj_[i]) known.push_back(inst_.objects[i]);
    const OfflinePlan plan = plan_with_mesh(known, inst_.start, inst_.params, epsilon_,
                                            delta_online_, max_dist_used_);
    std::vector<Point2D> path;
    path.reserve(plan.tour.waypoints.size() + 1);
    path.push_back(inst_.start);  // anchor: the waypoint the vehicle last left
    for (std::size_t i = 1; i < plan.tour.waypoints.size(); ++i)
      path.push_back(plan.tour.waypoints[i]);
    path.push_back(inst_.start);
    return path;
  }

  // Cheapest-insertion handling of freshly discovered sides (Q_new): each
  // still-uncovered new side not already served by an upcoming waypoint gets
  // the viewpoint with the smallest detour inserted into the path.
  void insert_pending(std::vector<Point2D>& path) {
    std::vector<int> fresh = std::move(pending_);
    pending_.clear();
    std::sort(fresh.begin(), fresh.end());
    for (int sid : fresh) {
      if (covered_[sid]) continue;
      const Side& s = side_by_id(sid);
      bool handled = false;
      for (std::size_t i = 1; i < path.size(); ++i) {
        if (efficiently_observes(path[i], s, inst_.params)) {
          handled = true;
          break;
        }
      }
      if (handled) continue;
      double best = std::numeric_limits<double>::infinity();
      int best_pt = -1;
      std::size_t best_slot = 0;
      for (const ObservationPoint& p : points_) {
        if (!std::binary_search(p.covers.begin(), p.covers.end(), sid)) continue;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          const double c = distance(path[i], p.pos) + distance(p.pos, path[i + 1]) -
                           distance(path[i], path[i + 1]);
          if (c < best) {
            best = c;
            best_pt = p.id;
            best_slot = i;
          }
        }
      }
      if (best_pt < 0)
        throw SideUncoverable("no known observation point observes side " + std::to_string(sid));
      path.insert(path.begin() + static_cast<long>(best_slot) + 1, points_[best_pt].pos);
    }
  }

  // Full replan: Steiner-select viewpoints for the newly discovered sides on
  // a local graph, aggregate them with the remaining path waypoints and
  // rebuild a tour anchored at the last departed waypoint. The instance
  // start stays the standing final target.
  void replan(std::vector<Point2D>& path) {
    std::vector<int> fresh = std::move(pending_);
    pending_.clear();
    std::sort(fresh.begin(), fresh.end());
    std::vector<int> q_new;
    for (int sid : fresh)
      if (!covered_[sid]) q_new.push_back(sid);
    if (q_new.empty()) return;

    std::vector<Side> new_sides;
    new_sides.reserve(q_new.size());
    for (int sid : q_new) new_sides.push_back(side_by_id(sid));
    std::vector<ObservationPoint> cand;
    for (const ObservationPoint& p : points_) {
      for (int sid : q_new) {
        if (std::binary_search(p.covers.begin(), p.covers.end(), sid)) {
          ObservationPoint local = p;
          local.id = static_cast<int>(cand.size());
          cand.push_back(std::move(local));
          break;
        }
      }
    }
    CoverageGraph local(cand, new_sides, Point2D{}, max_dist_used_, /*with_start=*/false);
    for (int i = 0; i < local.num_sides(); ++i)
      if (local.covering(i).empty())
        throw SideUncoverable("no known observation point observes side " +
                              std::to_string(local.side(i).id));
    std::vector<int> selected;
    if (local.num_sides() == 1) {
      selected.push_back(local.covering(0).front());
    } else {
      std::vector<int> terminals;
      for (int i = 0; i < local.num_sides(); ++i) terminals.push_back(local.midpoint_vertex(i));
      const SteinerTree t = steiner_tree(local, terminals);
      selected = trim(t, local).selected_points;
    }

    const Point2D anchor = path.front();
    std::map<std::pair<std::int64_t, std::int64_t>, char> seen;
    seen.emplace(coord_key(anchor), 1);
    seen.emplace(coord_key(inst_.start), 1);
    std::vector<Point2D> total;
    for (std::size_t i = 1; i + 1 < path.size(); ++i)
      if (seen.emplace(coord_key(path[i]), 1).second) total.push_back(path[i]);
    for (int id : selected)
      if (seen.emplace(coord_key(local.point(id).pos), 1).second)
        total.push_back(local.point(id).pos);

    path.clear();
    path.push_back(anchor);
    if (!total.empty()) {
      const Tour tour = christofides(total, anchor);
      for (std::size_t i = 1; i < tour.waypoints.size(); ++i) path.push_back(tour.waypoints[i]);
    }
    path.push_back(inst_.start);

    // every uncovered known side must be served by some upcoming waypoint
    for (const Side& s : sides_) {
      if (!known_side_[s.id] || covered_[s.id]) continue;
      bool served = false;
      for (std::size_t i = 1; i < path.size() && !served; ++i)
        served = efficiently_observes(path[i], s, inst_.params);
      if (!served)
        throw DomainError("replanned path misses side " + std::to_string(s.id));
    }
  }

  SimResult finish() {
    SimResult res;
    res.trace = trace_;
    res.steps = static_cast<long>(trace_.size()) - 1;
    res.covered_order = covered_order_;
    res.events = events_;
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < trace_.size(); ++i) len += distance(trace_[i], trace_[i + 1]);
    res.length = len;
    res.complete = true;
    for (const Side& s : sides_)
      if (!covered_[s.id]) res.complete = false;
    return res;
  }

  const Instance& inst_;
  double epsilon_;
  std::vector<Side> sides_;
  double max_dist_global_ = 0.0;
  double max_dist_used_ = 0.0;
  double delta_offline_ = 0.0;
  double delta_online_ = 0.0;
  double step_len_ = 0.0;
  long step_budget_ = 0;
  bool mesh_ready_ = false;
  bool run_started_ = false;

  Point2D uav_;
  std::vector<char> known_obj_;
  std::vector<char> known_side_;  // indexed by side id
  std::vector<char> covered_;    // indexed by side id
  std::vector<ObservationPoint> points_;
  std::map<std::pair<std::int64_t, std::int64_t>, int> by_coord_;
  std::vector<int> pending_;  // side ids discovered and not yet routed

  std::vector<Point2D> trace_;
  std::vector<int> covered_order_;
  std::vector<CoverEvent> events_;
};

inline SimResult run_nof(const Instance& inst, double epsilon) {
  return OnlineSim(inst, epsilon).run_nof();
}

inline SimResult run_ci(const Instance& inst, double epsilon) {
  return OnlineSim(inst, epsilon).run_ci();
}

inline SimResult run_batsp(const Instance& inst, double epsilon) {
  return OnlineSim(inst, epsilon).run_batsp();
}

}  // namespace coverplan
