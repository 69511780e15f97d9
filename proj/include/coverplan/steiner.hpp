#pragma once

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/graph.hpp"

namespace coverplan {

struct SteinerEdge {
  int u = 0;
  int v = 0;
  double w = 0.0;
};

struct SteinerTree {
  std::vector<SteinerEdge> edges;
  std::vector<int> terminals;
  double cost = 0.0;
  int leaf_repairs = 0;  // non-transit terminals that had to be re-attached as leaves
};

// Minimal adjacency-list graph satisfying the same interface as
// CoverageGraph where steiner_tree needs it; used by tests and by callers
// with explicit edge lists.
class AdjacencyGraph {
public:
  explicit AdjacencyGraph(int n) : adj_(n) {}

  void add_edge(int u, int v, double w) {
    adj_[u].emplace_back(v, w);
    adj_[v].emplace_back(u, w);
  }

  int num_vertices() const { return static_cast<int>(adj_.size()); }
  bool transit_allowed(int) const { return true; }

  double edge_weight(int u, int v) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [to, w] : adj_[u])
      if (to == v) best = std::min(best, w);
    return best;
  }

  template <class F>
  void for_each_neighbor(int v, F&& f) const {
    for (const auto& [to, w] : adj_[v]) f(to, w);
  }

private:
  std::vector<std::vector<std::pair<int, double>>> adj_;
};

struct ShortestPaths {
  std::vector<double> dist;
  std::vector<int> parent;
};

// Single-source shortest paths. Vertices whose transit is disallowed (side
// midpoints) may begin or end a path but are never expanded through.
template <class G>
ShortestPaths shortest_paths_from(const G& g, int source) {
  const int n = g.num_vertices();
  const double inf = std::numeric_limits<double>::infinity();
  ShortestPaths sp{std::vector<double>(n, inf), std::vector<int>(n, -1)};
  std::vector<char> done(n, 0);
  sp.dist[source] = 0.0;
  for (;;) {
    int u = -1;
    double best = inf;
    for (int v = 0; v < n; ++v) {
      if (!done[v] && sp.dist[v] < best) {
        best = sp.dist[v];
        u = v;
      }
    }
    if (u < 0) break;
    done[u] = 1;
    if (u != source && !g.transit_allowed(u)) continue;
    g.for_each_neighbor(u, [&](int v, double w) {
      if (done[v]) return;
      const double nd = sp.dist[u] + w;
      if (nd < sp.dist[v]) {
        sp.dist[v] = nd;
        sp.parent[v] = u;
      }
    });
  }
  return sp;
}

namespace detail {

class Dsu {
public:
  explicit Dsu(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

private:
  std::vector<int> parent_;
};

inline bool edge_less(const SteinerEdge& a, const SteinerEdge& b) {
  if (a.w != b.w) return a.w < b.w;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

inline SteinerEdge make_edge(int u, int v, double w) {
  if (u > v) std::swap(u, v);
  return SteinerEdge{u, v, w};
}

// Kruskal over an explicit edge list; ties broken by (weight, endpoint ids).
inline std::vector<SteinerEdge> mst_of(std::vector<SteinerEdge> edges, int num_vertices) {
  std::sort(edges.begin(), edges.end(), edge_less);
  Dsu dsu(num_vertices);
  std::vector<SteinerEdge> out;
  for (const SteinerEdge& e : edges)
    if (dsu.unite(e.u, e.v)) out.push_back(e);
  return out;
}

}  // namespace detail

// 2-approximate Steiner tree: metric closure over the terminals, MST of the
// closure, expansion back to shortest paths, MST of the expansion, pruning of
// non-terminal leaves. Non-transit terminals (side midpoints) are forced to
// end up as leaves; when an instance leaves one internal, it is re-attached
// through the cheaper incident viewpoint and the repair is counted.
template <class G>
SteinerTree steiner_tree(const G& g, std::vector<int> terminals) {
  std::sort(terminals.begin(), terminals.end());
  terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
  SteinerTree tree;
  tree.terminals = terminals;
  if (terminals.size() <= 1) return tree;

  const int t = static_cast<int>(terminals.size());
  std::vector<ShortestPaths> sp;
  sp.reserve(t);
  for (int i = 0; i < t; ++i) sp.push_back(shortest_paths_from(g, terminals[i]));

  // MST of the metric closure (terminal indices as vertices).
  std::vector<SteinerEdge> closure;
  closure.reserve(static_cast<std::size_t>(t) * (t - 1) / 2);
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      const double d = sp[i].dist[terminals[j]];
      if (!(d < std::numeric_limits<double>::infinity()))
        throw GraphDisconnected("terminals are not connected");
      closure.push_back(SteinerEdge{i, j, d});
    }
  }
  const std::vector<SteinerEdge> closure_mst = detail::mst_of(std::move(closure), t);

  // Expand closure edges into the underlying shortest paths.
  std::set<std::pair<int, int>> seen;
  std::vector<SteinerEdge> expansion;
  for (const SteinerEdge& ce : closure_mst) {
    int v = terminals[ce.v];
    const std::vector<int>& parent = sp[ce.u].parent;
    while (parent[v] >= 0) {
      const int u = parent[v];
      const auto key = std::minmax(u, v);
      if (seen.insert({key.first, key.second}).second)
        expansion.push_back(detail::make_edge(u, v, g.edge_weight(u, v)));
      v = u;
    }
  }

  std::vector<SteinerEdge> mst = detail::mst_of(std::move(expansion), g.num_vertices());

  // Prune non-terminal leaves until every leaf is a terminal.
  std::vector<char> is_terminal(g.num_vertices(), 0);
  for (int v : terminals) is_terminal[v] = 1;
  auto prune = [&](std::vector<SteinerEdge>& edges) {
    for (;;) {
      std::vector<int> degree(g.num_vertices(), 0);
      for (const SteinerEdge& e : edges) {
        ++degree[e.u];
        ++degree[e.v];
      }
      const std::size_t before = edges.size();
      edges.erase(std::remove_if(edges.begin(), edges.end(),
                                 [&](const SteinerEdge& e) {
                                   return (degree[e.u] == 1 && !is_terminal[e.u]) ||
                                          (degree[e.v] == 1 && !is_terminal[e.v]);
                                 }),
                  edges.end());
      if (edges.size() == before) break;
    }
  };
  prune(mst);

  // Re-attach internal non-transit terminals as leaves.
  int repairs = 0;
  for (;;) {
    std::vector<std::vector<int>> incident(g.num_vertices());
    for (int e = 0; e < static_cast<int>(mst.size()); ++e) {
      incident[mst[e].u].push_back(e);
      incident[mst[e].v].push_back(e);
    }
    int bad = -1;
    for (int v : terminals)
      if (!g.transit_allowed(v) && incident[v].size() >= 2) {
        bad = v;
        break;
      }
    if (bad < 0) break;
    ++repairs;

    auto other_end = [&](int e) { return mst[e].u == bad ? mst[e].v : mst[e].u; };
    std::vector<int> inc = incident[bad];
    std::sort(inc.begin(), inc.end(), [&](int a, int b) { return other_end(a) < other_end(b); });
    const int keep = inc.front();

    std::vector<char> drop(mst.size(), 0);
    for (int e : inc)
      if (e != keep) drop[e] = 1;
    std::vector<SteinerEdge> kept;
    for (int e = 0; e < static_cast<int>(mst.size()); ++e)
      if (!drop[e]) kept.push_back(mst[e]);

    // Reconnect the split components through transit-allowed vertices.
    detail::Dsu dsu(g.num_vertices());
    std::set<int> verts;
    for (const SteinerEdge& e : kept) {
      dsu.unite(e.u, e.v);
      verts.insert(e.u);
      verts.insert(e.v);
    }
    for (int e : inc) verts.insert(other_end(e));
    const std::vector<int> vlist(verts.begin(), verts.end());
    for (;;) {
      // components present among the tree vertices
      std::set<int> roots;
      for (int v : vlist) roots.insert(dsu.find(v));
      if (roots.size() <= 1) break;
      const int main_root = dsu.find(bad);
      SteinerEdge best{-1, -1, std::numeric_limits<double>::infinity()};
      for (int u : vlist) {
        if (!g.transit_allowed(u) || dsu.find(u) != main_root) continue;
        for (int v : vlist) {
          if (!g.transit_allowed(v) || dsu.find(v) == main_root) continue;
          const double w = g.edge_weight(u, v);
          if (!(w < std::numeric_limits<double>::infinity())) continue;
          const SteinerEdge cand = detail::make_edge(u, v, w);
          if (best.u < 0 || detail::edge_less(cand, best)) best = cand;
        }
      }
      if (best.u < 0) throw GraphDisconnected("cannot re-attach trimmed component");
      kept.push_back(best);
      dsu.unite(best.u, best.v);
    }
    mst = std::move(kept);
    prune(mst);
  }

  tree.edges = std::move(mst);
  tree.leaf_repairs = repairs;
  tree.cost = 0.0;
  for (const SteinerEdge& e : tree.edges) tree.cost += e.w;
  return tree;
}

struct TrimResult {
  std::vector<int> selected_points;  // observation point indices, ascending
  double t_left_cost = 0.0;
  double removed_weight = 0.0;  // always num_sides * D/2 = 2nD
  std::vector<SteinerEdge> residual_edges;
};

// Remove every viewpoint-midpoint edge from the tree. Each midpoint must be
// a leaf attached to exactly one chosen viewpoint; the removed weight is then
// exactly 2nD and the residual tree spans the selected viewpoints (and the
// start, when present).
inline TrimResult trim(const SteinerTree& t, const CoverageGraph& g) {
  std::vector<int> degree(g.num_vertices(), 0);
  for (const SteinerEdge& e : t.edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  for (int i = 0; i < g.num_sides(); ++i) {
    const int v = g.midpoint_vertex(i);
    if (degree[v] != 1)
      throw DomainError("midpoint of side " + std::to_string(g.side(i).id) +
                        " is not a leaf of the Steiner tree (degree " +
                        std::to_string(degree[v]) + ")");
  }

  TrimResult res;
  std::set<int> selected;
  for (const SteinerEdge& e : t.edges) {
    const bool mid = g.is_midpoint(e.u) || g.is_midpoint(e.v);
    if (mid) {
      if (e.w != g.coverage_weight())
        throw DomainError("coverage edge does not carry weight D/2");
      const int pt = g.is_midpoint(e.u) ? e.v : e.u;
      if (!g.is_point(pt)) throw DomainError("midpoint attached to a non-viewpoint vertex");
      selected.insert(g.point_index_of(pt));
    } else {
      res.residual_edges.push_back(e);
      res.t_left_cost += e.w;
      if (g.is_point(e.u)) selected.insert(g.point_index_of(e.u));
      if (g.is_point(e.v)) selected.insert(g.point_index_of(e.v));
    }
  }
  res.removed_weight = g.num_sides() * g.coverage_weight();

  // The residual tree must stay connected over the selected viewpoints
  // (vacuous for a single selected hub with no residual edges).
  if (!res.residual_edges.empty()) {
    detail::Dsu dsu(g.num_vertices());
    for (const SteinerEdge& e : res.residual_edges) dsu.unite(e.u, e.v);
    int root = -1;
    bool ok = true;
    auto check = [&](int v) {
      if (root < 0)
        root = dsu.find(v);
      else if (dsu.find(v) != root)
        ok = false;
    };
    if (g.has_start()) check(g.start_vertex());
    for (int pt : selected) check(g.point_vertex(pt));
    if (!ok) throw GraphDisconnected("trimmed Steiner tree is disconnected");
  }

  res.selected_points.assign(selected.begin(), selected.end());
  return res;
}

}  // namespace coverplan
