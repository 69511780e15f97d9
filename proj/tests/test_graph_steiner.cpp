#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <sstream>

#include "coverplan/graph.hpp"
#include "coverplan/rng.hpp"
#include "coverplan/steiner.hpp"

using namespace coverplan;

namespace {

ObservationParams params60() {
  ObservationParams p;
  p.theta = std::acos(-1.0) / 3.0;
  p.d_max = 4.0;
  p.d_min = 1.0;
  p.perception_radius = 40.0;
  return p;
}

// Exact minimum Steiner tree: minimize MST(G[W]) over all supersets W of the
// terminals (valid because any Steiner tree is a spanning tree of its own
// vertex set).
double brute_force_steiner(const AdjacencyGraph& g, const std::vector<int>& terminals) {
  const int n = g.num_vertices();
  std::vector<int> extra;
  std::vector<char> is_term(n, 0);
  for (int t : terminals) is_term[t] = 1;
  for (int v = 0; v < n; ++v)
    if (!is_term[v]) extra.push_back(v);
  double best = std::numeric_limits<double>::infinity();
  for (int mask = 0; mask < (1 << extra.size()); ++mask) {
    std::vector<int> verts = terminals;
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (mask & (1 << i)) verts.push_back(extra[i]);
    // Prim over the induced subgraph
    std::vector<char> used(n, 0);
    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<char> in_set(n, 0);
    for (int v : verts) in_set[v] = 1;
    key[verts[0]] = 0.0;
    double cost = 0.0;
    bool ok = true;
    for (std::size_t it = 0; it < verts.size(); ++it) {
      int u = -1;
      double bk = std::numeric_limits<double>::infinity();
      for (int v : verts)
        if (!used[v] && key[v] < bk) {
          bk = key[v];
          u = v;
        }
      if (u < 0) {
        ok = false;
        break;
      }
      used[u] = 1;
      cost += key[u];
      g.for_each_neighbor(u, [&](int v, double w) {
        if (in_set[v] && !used[v] && w < key[v]) key[v] = w;
      });
    }
    if (ok) best = std::min(best, cost);
  }
  return best;
}

}  // namespace

TEST_CASE("graph construction follows the edge rules") {
  // one side covered by two points, D = 50
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const Side bottom = sides_of(o)[0];
  std::vector<ObservationPoint> pts;
  pts.push_back({0, {0.0, -3.0}, {bottom.id}});
  pts.push_back({1, {1.0, -3.0}, {bottom.id}});
  CoverageGraph g(pts, {bottom}, Point2D{-5.0, -5.0}, 50.0);

  CHECK(g.num_vertices() == 1 + 1 + 2);
  const int mid = g.midpoint_vertex(0);
  const int p0 = g.point_vertex(0);
  const int p1 = g.point_vertex(1);
  CHECK(g.edge_weight(p0, mid) == 25.0);
  CHECK(g.edge_weight(p1, mid) == 25.0);
  CHECK(g.edge_weight(p0, p1) == distance(pts[0].pos, pts[1].pos));
  CHECK(g.edge_weight(0, p0) == distance({-5.0, -5.0}, pts[0].pos));
  CHECK(g.edge_weight(0, mid) == CoverageGraph::kInf);  // no start-midpoint edge
  CHECK_FALSE(g.transit_allowed(mid));
  CHECK(g.transit_allowed(p0));
}

TEST_CASE("coverage edges weigh D/2 regardless of geometry") {
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const Side bottom = sides_of(o)[0];
  std::vector<ObservationPoint> pts = {{0, {0.3, -3.7}, {bottom.id}}};
  for (double dmax : {8.0, 20.0, 124.0}) {
    CoverageGraph g(pts, {bottom}, Point2D{0, 0}, dmax);
    CHECK(g.edge_weight(g.point_vertex(0), g.midpoint_vertex(0)) == dmax / 2.0);
  }
}

TEST_CASE("build_graph rejects uncovered sides") {
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const auto sides = sides_of(o);
  std::vector<ObservationPoint> pts = {{0, {0.0, -3.0}, {sides[0].id}}};
  CHECK_THROWS_AS(
      build_graph(pts, std::vector<Side>(sides.begin(), sides.end()), Point2D{0, -8}, 10.0),
      SideUncoverable);
}

TEST_CASE("graph dump is line oriented and parseable") {
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const Side bottom = sides_of(o)[0];
  std::vector<ObservationPoint> pts = {{0, {0.0, -3.0}, {bottom.id}},
                                       {1, {1.0, -3.0}, {bottom.id}}};
  CoverageGraph g(pts, {bottom}, Point2D{-5.0, -5.0}, 50.0);
  std::ostringstream os;
  g.dump_adjacency(os);
  std::istringstream is(os.str());
  int u, v;
  double w;
  int edges = 0;
  while (is >> u >> v >> w) {
    CHECK(u < v);
    CHECK(w == g.edge_weight(u, v));
    ++edges;
  }
  CHECK(edges == 5);  // 2 coverage + 1 point-point + 2 start edges
}

TEST_CASE("shortest paths never transit a midpoint") {
  // two viewpoints observing the same side, 3 apart, on a small-D instance
  // where the through-midpoint path (cost D = 2) would be cheaper
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const Side bottom = sides_of(o)[0];
  std::vector<ObservationPoint> pts = {{0, {-1.0, -2.5}, {bottom.id}},
                                       {1, {1.0, -2.5}, {bottom.id}}};
  CoverageGraph g(pts, {bottom}, Point2D{0.0, -8.0}, 2.0);
  const auto sp = shortest_paths_from(g, g.point_vertex(0));
  // direct Euclidean hop, not 2 * D/2 through the midpoint
  CHECK(sp.dist[g.point_vertex(1)] == Catch::Approx(2.0));
  CHECK(sp.parent[g.point_vertex(1)] == g.point_vertex(0));
}

TEST_CASE("two-terminal Steiner tree is the shortest path") {
  AdjacencyGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(1, 2, 1.0);
  g.add_edge(0, 2, 3.0);
  g.add_edge(2, 3, 5.0);
  const SteinerTree t = steiner_tree(g, {0, 2});
  CHECK(t.cost == Catch::Approx(2.0));
  CHECK(t.edges.size() == 2);
}

TEST_CASE("three terminals on a path keep the whole path") {
  AdjacencyGraph g(3);
  g.add_edge(0, 1, 2.0);
  g.add_edge(1, 2, 3.0);
  const SteinerTree t = steiner_tree(g, {0, 1, 2});
  CHECK(t.cost == Catch::Approx(5.0));
  CHECK(t.edges.size() == 2);
}

TEST_CASE("KMB stays within twice the exact Steiner optimum") {
  Rng rng(41);
  for (int it = 0; it < 100; ++it) {
    const int n = 5 + rng.index(6);  // 5..10 vertices
    AdjacencyGraph g(n);
    // random connected graph: spanning chain plus extra edges
    for (int v = 1; v < n; ++v) g.add_edge(rng.index(v), v, rng.uniform(0.1, 10.0));
    const int extra = rng.index(2 * n);
    for (int e = 0; e < extra; ++e) {
      const int u = rng.index(n), v = rng.index(n);
      if (u != v) g.add_edge(u, v, rng.uniform(0.1, 10.0));
    }
    const int nt = 2 + rng.index(3);  // 2..4 terminals
    std::vector<int> terminals;
    for (int i = 0; i < nt; ++i) terminals.push_back(rng.index(n));
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.size() < 2) continue;

    const SteinerTree t = steiner_tree(g, terminals);
    const double opt = brute_force_steiner(g, terminals);
    CHECK(t.cost <= 2.0 * opt + 1e-9);
    CHECK(t.cost >= opt - 1e-9);
    // every leaf is a terminal
    std::vector<int> deg(n, 0);
    for (const SteinerEdge& e : t.edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    std::vector<char> is_term(n, 0);
    for (int v : terminals) is_term[v] = 1;
    for (int v = 0; v < n; ++v)
      if (deg[v] == 1) CHECK(is_term[v]);
  }
}

TEST_CASE("Steiner cost is invariant under vertex relabeling") {
  Rng rng(43);
  for (int it = 0; it < 20; ++it) {
    const int n = 8;
    std::vector<std::tuple<int, int, double>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(rng.index(v), v, rng.uniform(0.1, 10.0));
    for (int e = 0; e < 8; ++e) {
      const int u = rng.index(n), v = rng.index(n);
      if (u != v) edges.emplace_back(u, v, rng.uniform(0.1, 10.0));
    }
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.index(i + 1)]);

    AdjacencyGraph g1(n), g2(n);
    for (const auto& [u, v, w] : edges) {
      g1.add_edge(u, v, w);
      g2.add_edge(perm[u], perm[v], w);
    }
    const std::vector<int> t1 = {0, 3, 5};
    std::vector<int> t2;
    for (int v : t1) t2.push_back(perm[v]);
    CHECK(steiner_tree(g1, t1).cost == Catch::Approx(steiner_tree(g2, t2).cost));
  }
}

TEST_CASE("disconnected terminals are reported") {
  AdjacencyGraph g(4);
  g.add_edge(0, 1, 1.0);
  g.add_edge(2, 3, 1.0);
  CHECK_THROWS_AS(steiner_tree(g, {0, 3}), GraphDisconnected);
}

TEST_CASE("trim removes exactly the coverage edges") {
  // n = 1 object coverage graph built by hand: 4 sides, 4 hub points
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const auto sides4 = sides_of(o);
  std::vector<Side> sides(sides4.begin(), sides4.end());
  const ObservationParams pr = params60();
  std::vector<ObservationPoint> pts;
  for (const Side& s : sides) {
    const Point2D p = s.midpoint + (-2.0) * s.inward_normal;
    std::vector<int> covers;
    for (const Side& q : sides)
      if (efficiently_observes(p, q, pr)) covers.push_back(q.id);
    pts.push_back({static_cast<int>(pts.size()), p, covers});
  }
  const double dmax = 12.0;
  CoverageGraph g(pts, sides, Point2D{0.0, -6.0}, dmax);
  std::vector<int> terminals{g.start_vertex()};
  for (int i = 0; i < g.num_sides(); ++i) terminals.push_back(g.midpoint_vertex(i));
  const SteinerTree t = steiner_tree(g, terminals);
  const TrimResult tr = trim(t, g);
  CHECK(tr.removed_weight == 4 * (dmax / 2.0));
  CHECK(tr.t_left_cost == Catch::Approx(t.cost - tr.removed_weight));
  CHECK(tr.t_left_cost > 0.0);
  // selected points cover all sides
  std::set<int> covered;
  for (int id : tr.selected_points)
    covered.insert(g.point(id).covers.begin(), g.point(id).covers.end());
  for (const Side& s : sides) CHECK(covered.count(s.id) == 1);
}

TEST_CASE("trim rejects internal midpoints") {
  const RectObject o{0, {0.0, 0.0}, 2.0, 2.0};
  const Side bottom = sides_of(o)[0];
  std::vector<ObservationPoint> pts = {{0, {-1.0, -2.5}, {bottom.id}},
                                       {1, {1.0, -2.5}, {bottom.id}}};
  CoverageGraph g(pts, {bottom}, Point2D{0.0, -8.0}, 2.0);
  SteinerTree bogus;
  bogus.edges = {{g.midpoint_vertex(0), g.point_vertex(0), 1.0},
                 {g.midpoint_vertex(0), g.point_vertex(1), 1.0}};
  bogus.cost = 2.0;
  CHECK_THROWS_AS(trim(bogus, g), DomainError);
}
