#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "coverplan/discretize.hpp"
#include "coverplan/errors.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/offline.hpp"
#include "coverplan/tour.hpp"

namespace coverplan {

// Sentinel point id for the start inside zone 1.
constexpr int kStartPointId = -1;

// Zone 1 holds only the start; zone 1+r holds the viewpoints able to observe
// side r. A point observing several sides appears in several zones.
struct Zone {
  int id = 0;
  std::vector<int> members;
};

inline std::vector<Zone> compute_zones(const std::vector<ObservationPoint>& points,
                                       int num_sides) {
  std::vector<Zone> zones(num_sides + 1);
  zones[0] = Zone{1, {kStartPointId}};
  for (int r = 1; r <= num_sides; ++r) zones[r].id = r + 1;
  for (const ObservationPoint& p : points)
    for (int sid : p.covers)
      if (sid >= 1 && sid <= num_sides) zones[sid].members.push_back(p.id);
  return zones;
}

struct OracleCaps {
  std::uint64_t max_combinations = 100000;
  int max_zones = 13;
};

struct OracleResult {
  Tour tour;
  std::uint64_t combinations = 0;  // representative combinations enumerated
  std::uint64_t evaluations = 0;   // distinct representative sets solved exactly
};

// Exact minimum tour that picks one representative per zone: enumerate every
// representative combination (deduplicating coincident picks) and solve each
// with the Held-Karp oracle. Reference optimum for the approximate planner.
inline OracleResult exact_optimum_over_zones(const std::vector<ObservationPoint>& points,
                                             const std::vector<Zone>& zones, Point2D start,
                                             const OracleCaps& caps = {}) {
  if (static_cast<int>(zones.size()) > caps.max_zones)
    throw InstanceTooLarge("zone count " + std::to_string(zones.size()) + " exceeds cap " +
                           std::to_string(caps.max_zones));
  std::vector<const Zone*> side_zones;
  for (const Zone& z : zones) {
    if (z.id == 1) continue;
    if (z.members.empty()) throw SideUncoverable("zone " + std::to_string(z.id) + " is empty");
    side_zones.push_back(&z);
  }
  std::uint64_t combos = 1;
  for (const Zone* z : side_zones) {
    combos *= z->members.size();
    if (combos > caps.max_combinations)
      throw InstanceTooLarge("representative combinations exceed cap " +
                             std::to_string(caps.max_combinations));
  }

  OracleResult res;
  res.combinations = combos;
  std::map<std::vector<int>, double> cache;
  std::vector<std::size_t> pick(side_zones.size(), 0);
  std::vector<int> best_reps;
  double best_len = std::numeric_limits<double>::infinity();
  for (;;) {
    std::vector<int> reps;
    reps.reserve(side_zones.size());
    for (std::size_t i = 0; i < side_zones.size(); ++i)
      reps.push_back(side_zones[i]->members[pick[i]]);
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    auto it = cache.find(reps);
    double len;
    if (it != cache.end()) {
      len = it->second;
    } else {
      std::vector<Point2D> pos;
      pos.reserve(reps.size());
      for (int id : reps) pos.push_back(points[id].pos);
      len = held_karp(pos, start).length;
      cache.emplace(reps, len);
      ++res.evaluations;
    }
    if (len < best_len) {
      best_len = len;
      best_reps = reps;
    }
    // next combination (mixed radix)
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == side_zones[k]->members.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }

  std::vector<Point2D> pos;
  for (int id : best_reps) pos.push_back(points[id].pos);
  res.tour = held_karp(pos, start);
  return res;
}

inline Tour exact_optimum(const Instance& inst, double epsilon, const OracleCaps& caps = {}) {
  if (inst.n() < 2) throw InstanceTooSmall("the oracle needs at least 2 objects");
  const double max_dist = max_object_distance(inst.objects);
  const double delta = mesh_granularity(epsilon, inst.n(), max_dist);
  const std::vector<ObservationPoint> points =
      generate_observation_points(inst.objects, inst.params, delta);
  const std::vector<Zone> zones = compute_zones(points, 4 * inst.n());
  return exact_optimum_over_zones(points, zones, inst.start, caps).tour;
}

// Certified lower bound on the optimal tour: the max object distance or half
// the trimmed Steiner cost, whichever is larger.
inline double lower_bound(const Instance&, const OfflinePlan& plan) {
  return std::max(plan.max_dist, plan.t_left_cost / 2.0);
}

}  // namespace coverplan
