#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/geometry.hpp"

namespace coverplan {

// Closed waypoint sequence; the first waypoint is the start and the closing
// edge back to it is included in the length.
struct Tour {
  std::vector<Point2D> waypoints;
  double length = 0.0;
};

inline double closed_tour_length(const std::vector<Point2D>& wp) {
  if (wp.size() < 2) return 0.0;
  double len = 0.0;
  for (std::size_t i = 0; i < wp.size(); ++i) len += distance(wp[i], wp[(i + 1) % wp.size()]);
  return len;
}

namespace detail {

inline std::vector<std::vector<double>> distance_matrix(const std::vector<Point2D>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = distance(pts[i], pts[j]);
  return d;
}

// Prim MST over the complete graph; returns parent edges (to, from).
inline std::vector<std::pair<int, int>> complete_mst(const std::vector<std::vector<double>>& d) {
  const int n = static_cast<int>(d.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<int> from(n, -1);
  std::vector<char> in(n, 0);
  best[0] = 0.0;
  std::vector<std::pair<int, int>> edges;
  for (int it = 0; it < n; ++it) {
    int u = -1;
    double b = inf;
    for (int v = 0; v < n; ++v)
      if (!in[v] && best[v] < b) {
        b = best[v];
        u = v;
      }
    in[u] = 1;
    if (from[u] >= 0) edges.emplace_back(from[u], u);
    for (int v = 0; v < n; ++v) {
      if (in[v]) continue;
      if (d[u][v] < best[v]) {
        best[v] = d[u][v];
        from[v] = u;
      }
    }
  }
  return edges;
}

struct MatchState {
  const std::vector<std::vector<double>>* d = nullptr;
  std::vector<int> partner;
  std::vector<int> best_partner;
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t nodes = 0;
  std::uint64_t node_budget = 0;
  bool exhausted = false;
};

inline double match_lower_bound(const MatchState& st) {
  const auto& d = *st.d;
  const int k = static_cast<int>(st.partner.size());
  double lb = 0.0;
  for (int i = 0; i < k; ++i) {
    if (st.partner[i] >= 0) continue;
    double m = std::numeric_limits<double>::infinity();
    for (int j = 0; j < k; ++j)
      if (j != i && st.partner[j] < 0) m = std::min(m, d[i][j]);
    lb += m / 2.0;
  }
  return lb;
}

inline void match_search(MatchState& st, double acc) {
  if (++st.nodes > st.node_budget) {
    st.exhausted = true;
    return;
  }
  const auto& d = *st.d;
  const int k = static_cast<int>(st.partner.size());
  int i = -1;
  for (int v = 0; v < k; ++v)
    if (st.partner[v] < 0) {
      i = v;
      break;
    }
  if (i < 0) {
    if (acc < st.best) {
      st.best = acc;
      st.best_partner = st.partner;
    }
    return;
  }
  if (acc + match_lower_bound(st) >= st.best) return;
  std::vector<std::pair<double, int>> cands;
  for (int j = i + 1; j < k; ++j)
    if (st.partner[j] < 0) cands.emplace_back(d[i][j], j);
  std::sort(cands.begin(), cands.end());
  for (const auto& [w, j] : cands) {
    st.partner[i] = j;
    st.partner[j] = i;
    match_search(st, acc + w);
    st.partner[i] = -1;
    st.partner[j] = -1;
    if (st.exhausted) return;
  }
}

}  // namespace detail

struct MatchingResult {
  std::vector<std::pair<int, int>> pairs;
  double weight = 0.0;
  bool exact = true;
};

// Minimum-weight perfect matching on an even vertex set. Exact via
// branch-and-bound up to exact_limit vertices, greedy nearest-pair beyond
// (the Christofides 1.5 guarantee is then heuristic and flagged as such).
inline MatchingResult min_weight_matching(const std::vector<std::vector<double>>& d,
                                          int exact_limit = 30) {
  const int k = static_cast<int>(d.size());
  MatchingResult res;
  if (k == 0) return res;
  if (k % 2 != 0) throw InvalidParameter("perfect matching needs an even vertex count");

  // greedy closest-pair matching, also the initial branch-and-bound bound
  std::vector<int> partner(k, -1);
  double greedy_weight = 0.0;
  for (int round = 0; round < k / 2; ++round) {
    int bi = -1, bj = -1;
    double bw = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
      if (partner[i] >= 0) continue;
      for (int j = i + 1; j < k; ++j) {
        if (partner[j] >= 0) continue;
        if (d[i][j] < bw) {
          bw = d[i][j];
          bi = i;
          bj = j;
        }
      }
    }
    partner[bi] = bj;
    partner[bj] = bi;
    greedy_weight += bw;
  }

  std::vector<int> chosen = partner;
  double weight = greedy_weight;
  bool exact = false;
  if (k <= exact_limit) {
    detail::MatchState st;
    st.d = &d;
    st.partner.assign(k, -1);
    st.best_partner = partner;
    st.best = greedy_weight;
    st.node_budget = 50'000'000;
    detail::match_search(st, 0.0);
    chosen = st.best_partner;
    weight = st.best;
    exact = !st.exhausted;
  }

  res.weight = weight;
  res.exact = exact;
  for (int i = 0; i < k; ++i)
    if (chosen[i] > i) res.pairs.emplace_back(i, chosen[i]);
  return res;
}

struct ChristofidesResult {
  Tour tour;
  double matching_weight = 0.0;
  bool matching_exact = true;
};

// 1.5-approximate metric tour: MST, minimum-weight perfect matching on the
// odd-degree vertices, Eulerian circuit, shortcutting repeated visits.
inline ChristofidesResult christofides_detail(const std::vector<Point2D>& points, Point2D start,
                                              int matching_exact_limit = 30) {
  if (points.empty()) throw InvalidParameter("christofides needs at least one point");
  std::vector<Point2D> pts;
  pts.reserve(points.size() + 1);
  pts.push_back(start);
  pts.insert(pts.end(), points.begin(), points.end());
  const int n = static_cast<int>(pts.size());
  const auto d = detail::distance_matrix(pts);

  const auto mst = detail::complete_mst(d);
  std::vector<int> degree(n, 0);
  for (const auto& [u, v] : mst) {
    ++degree[u];
    ++degree[v];
  }
  std::vector<int> odd;
  for (int v = 0; v < n; ++v)
    if (degree[v] % 2 == 1) odd.push_back(v);

  ChristofidesResult out;
  std::vector<std::pair<int, int>> extra;
  if (!odd.empty()) {
    std::vector<std::vector<double>> sub(odd.size(), std::vector<double>(odd.size(), 0.0));
    for (std::size_t i = 0; i < odd.size(); ++i)
      for (std::size_t j = 0; j < odd.size(); ++j) sub[i][j] = d[odd[i]][odd[j]];
    const MatchingResult m = min_weight_matching(sub, matching_exact_limit);
    out.matching_weight = m.weight;
    out.matching_exact = m.exact;
    for (const auto& [a, b] : m.pairs) extra.emplace_back(odd[a], odd[b]);
  }

  // multigraph = MST + matching edges
  std::vector<std::pair<int, int>> edges = mst;
  edges.insert(edges.end(), extra.begin(), extra.end());
  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    incident[edges[e].first].push_back(e);
    incident[edges[e].second].push_back(e);
  }
  for (int v = 0; v < n; ++v) {
    auto other = [&](int e) { return edges[e].first == v ? edges[e].second : edges[e].first; };
    std::sort(incident[v].begin(), incident[v].end(), [&](int a, int b) {
      return std::make_pair(other(a), a) < std::make_pair(other(b), b);
    });
  }

  // Hierholzer from the start vertex
  std::vector<char> used(edges.size(), 0);
  std::vector<std::size_t> ptr(n, 0);
  std::vector<int> stack{0};
  std::vector<int> circuit;
  while (!stack.empty()) {
    const int v = stack.back();
    while (ptr[v] < incident[v].size() && used[incident[v][ptr[v]]]) ++ptr[v];
    if (ptr[v] == incident[v].size()) {
      circuit.push_back(v);
      stack.pop_back();
    } else {
      const int e = incident[v][ptr[v]];
      used[e] = 1;
      stack.push_back(edges[e].first == v ? edges[e].second : edges[e].first);
    }
  }

  // shortcut: keep the first occurrence of each vertex
  std::vector<char> visited(n, 0);
  std::vector<Point2D> waypoints;
  for (int v : circuit) {
    if (!visited[v]) {
      visited[v] = 1;
      waypoints.push_back(pts[v]);
    }
  }
  out.tour.waypoints = std::move(waypoints);
  out.tour.length = closed_tour_length(out.tour.waypoints);
  return out;
}

inline Tour christofides(const std::vector<Point2D>& points, Point2D start) {
  return christofides_detail(points, start).tour;
}

// Exact minimum closed tour by subset dynamic programming; the reference
// oracle for the approximate tours. Guarded at 20 points.
inline Tour held_karp(const std::vector<Point2D>& points, Point2D start) {
  const int k = static_cast<int>(points.size());
  if (k > 20) throw InstanceTooLarge("held_karp is limited to 20 points");
  if (k == 0) return Tour{{start}, 0.0};

  std::vector<double> from_start(k);
  for (int i = 0; i < k; ++i) from_start[i] = distance(start, points[i]);
  std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) d[i][j] = distance(points[i], points[j]);

  const std::uint32_t full = (1u << k) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> dp(full + 1, std::vector<double>(k, inf));
  std::vector<std::vector<std::int8_t>> par(full + 1, std::vector<std::int8_t>(k, -1));
  for (int i = 0; i < k; ++i) dp[1u << i][i] = from_start[i];
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    for (int i = 0; i < k; ++i) {
      if (!(mask & (1u << i)) || dp[mask][i] == inf) continue;
      const double base = dp[mask][i];
      for (int j = 0; j < k; ++j) {
        if (mask & (1u << j)) continue;
        const std::uint32_t next = mask | (1u << j);
        const double cand = base + d[i][j];
        if (cand < dp[next][j]) {
          dp[next][j] = cand;
          par[next][j] = static_cast<std::int8_t>(i);
        }
      }
    }
  }
  int last = 0;
  double best = inf;
  for (int i = 0; i < k; ++i) {
    const double cand = dp[full][i] + from_start[i];
    if (cand < best) {
      best = cand;
      last = i;
    }
  }
  std::vector<int> order;
  std::uint32_t mask = full;
  int cur = last;
  while (cur >= 0) {
    order.push_back(cur);
    const int prev = par[mask][cur];
    mask &= ~(1u << cur);
    cur = prev;
  }
  std::reverse(order.begin(), order.end());
  Tour t;
  t.waypoints.push_back(start);
  for (int i : order) t.waypoints.push_back(points[i]);
  t.length = closed_tour_length(t.waypoints);
  return t;
}

}  // namespace coverplan
