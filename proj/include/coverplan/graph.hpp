#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coverplan/discretize.hpp"
#include "coverplan/errors.hpp"
#include "coverplan/geometry.hpp"

namespace coverplan {

// Weighted graph linking the start, the side midpoints and the candidate
// viewpoints. A viewpoint-midpoint edge exists iff the viewpoint efficiently
// observes the side and always weighs D/2; viewpoint-viewpoint and
// viewpoint-start pairs are complete with Euclidean weight (materialized
// lazily: weights are computed on demand, only the coverage incidence is
// stored). There are no midpoint-midpoint and no start-midpoint edges, and
// midpoints are never used as transit vertices: the vehicle cannot fly
// through a side.
class CoverageGraph {
public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  CoverageGraph(std::vector<ObservationPoint> points, std::vector<Side> sides, Point2D start,
                double max_dist, bool with_start = true)
      : points_(std::move(points)),
        sides_(std::move(sides)),
        start_(start),
        half_weight_(max_dist / 2.0),
        max_dist_(max_dist),
        with_start_(with_start) {
    std::map<int, int> side_index;
    for (int i = 0; i < static_cast<int>(sides_.size()); ++i) side_index[sides_[i].id] = i;
    covering_.assign(sides_.size(), {});
    covers_local_.assign(points_.size(), {});
    for (int k = 0; k < static_cast<int>(points_.size()); ++k) {
      for (int sid : points_[k].covers) {
        auto it = side_index.find(sid);
        if (it == side_index.end()) continue;  // side not part of this graph
        covering_[it->second].push_back(k);
        covers_local_[k].push_back(it->second);
      }
    }
  }

  // Vertex layout: [start][midpoints in side order][viewpoints in point order].
  int num_vertices() const {
    return start_count() + static_cast<int>(sides_.size() + points_.size());
  }
  bool has_start() const { return with_start_; }
  int start_vertex() const { return with_start_ ? 0 : -1; }
  int num_sides() const { return static_cast<int>(sides_.size()); }
  int num_points() const { return static_cast<int>(points_.size()); }
  int midpoint_vertex(int side_idx) const { return start_count() + side_idx; }
  int point_vertex(int point_idx) const {
    return start_count() + static_cast<int>(sides_.size()) + point_idx;
  }
  bool is_start(int v) const { return with_start_ && v == 0; }
  bool is_midpoint(int v) const {
    return v >= start_count() && v < start_count() + static_cast<int>(sides_.size());
  }
  bool is_point(int v) const { return v >= start_count() + static_cast<int>(sides_.size()); }
  int side_index_of(int v) const { return v - start_count(); }
  int point_index_of(int v) const {
    return v - start_count() - static_cast<int>(sides_.size());
  }
  const Side& side(int side_idx) const { return sides_[side_idx]; }
  const ObservationPoint& point(int point_idx) const { return points_[point_idx]; }
  const std::vector<ObservationPoint>& points() const { return points_; }
  const std::vector<int>& covering(int side_idx) const { return covering_[side_idx]; }
  double coverage_weight() const { return half_weight_; }
  double max_dist() const { return max_dist_; }

  bool transit_allowed(int v) const { return !is_midpoint(v); }

  Point2D position(int v) const {
    if (is_start(v)) return start_;
    if (is_midpoint(v)) return sides_[side_index_of(v)].midpoint;
    return points_[point_index_of(v)].pos;
  }

  double edge_weight(int u, int v) const {
    if (u == v) return kInf;
    const bool mu = is_midpoint(u);
    const bool mv = is_midpoint(v);
    if (mu && mv) return kInf;
    if (mu || mv) {
      const int mid = mu ? u : v;
      const int other = mu ? v : u;
      if (!is_point(other)) return kInf;  // no start-midpoint edges
      const int side_idx = side_index_of(mid);
      const int pt = point_index_of(other);
      const auto& cov = covers_local_[pt];
      if (std::binary_search(cov.begin(), cov.end(), side_idx)) return half_weight_;
      return kInf;
    }
    return distance(position(u), position(v));
  }

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    if (is_start(v)) {
      for (int k = 0; k < num_points(); ++k)
        f(point_vertex(k), distance(start_, points_[k].pos));
      return;
    }
    if (is_midpoint(v)) {
      for (int k : covering_[side_index_of(v)]) f(point_vertex(k), half_weight_);
      return;
    }
    const int pt = point_index_of(v);
    if (with_start_) f(0, distance(start_, points_[pt].pos));
    for (int side_idx : covers_local_[pt]) f(midpoint_vertex(side_idx), half_weight_);
    for (int k = 0; k < num_points(); ++k) {
      if (k == pt) continue;
      f(point_vertex(k), distance(points_[pt].pos, points_[k].pos));
    }
  }

  // Line-oriented debug dump: "vertex-id vertex-id weight", each undirected
  // edge once with the smaller endpoint first.
  void dump_adjacency(std::ostream& os) const {
    const int n = num_vertices();
    for (int u = 0; u < n; ++u) {
      for_each_neighbor(u, [&](int v, double w) {
        if (u < v) {
          char buf[96];
          std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", u, v, w);
          os << buf;
        }
      });
    }
  }

private:
  int start_count() const { return with_start_ ? 1 : 0; }

  std::vector<ObservationPoint> points_;
  std::vector<Side> sides_;
  Point2D start_;
  double half_weight_;
  double max_dist_;
  bool with_start_;
  std::vector<std::vector<int>> covering_;      // side index -> point indices
  std::vector<std::vector<int>> covers_local_;  // point index -> side indices (sorted)
};

inline CoverageGraph build_graph(std::vector<ObservationPoint> points, std::vector<Side> sides,
                                 Point2D start, double max_dist) {
  CoverageGraph g(std::move(points), std::move(sides), start, max_dist, true);
  for (int i = 0; i < g.num_sides(); ++i)
    if (g.covering(i).empty())
      throw SideUncoverable("side " + std::to_string(g.side(i).id) +
                            " has no covering observation point");
  return g;
}

}  // namespace coverplan
