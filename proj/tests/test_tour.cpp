#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coverplan/rng.hpp"
#include "coverplan/tour.hpp"

using namespace coverplan;

namespace {

// factorial brute force over visit orders
double brute_force_tour(const std::vector<Point2D>& pts, Point2D start) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = distance(start, pts[order.front()]);
    for (std::size_t i = 0; i + 1 < order.size(); ++i)
      len += distance(pts[order[i]], pts[order[i + 1]]);
    len += distance(pts[order.back()], start);
    best = std::min(best, len);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

std::vector<Point2D> random_points(Rng& rng, int k, double span) {
  std::vector<Point2D> pts;
  for (int i = 0; i < k; ++i) pts.push_back({rng.uniform(0, span), rng.uniform(0, span)});
  return pts;
}

}  // namespace

TEST_CASE("any 3-point tour is the triangle perimeter") {
  const std::vector<Point2D> pts = {{4, 0}, {0, 3}};
  const Point2D start{0, 0};
  const Tour t = christofides(pts, start);
  CHECK(t.waypoints.size() == 3);
  CHECK(t.length == Catch::Approx(4.0 + 3.0 + 5.0));
}

TEST_CASE("unit square corners tour has length 4") {
  const std::vector<Point2D> pts = {{1, 0}, {1, 1}, {0, 1}};
  const Point2D start{0, 0};
  const Tour hk = held_karp(pts, start);
  CHECK(hk.length == Catch::Approx(4.0));
  const Tour ch = christofides(pts, start);
  CHECK(ch.length >= hk.length - 1e-9);
  CHECK(ch.length <= 1.5 * hk.length + 1e-9);
  CHECK(ch.length == Catch::Approx(4.0));  // derived via the exact oracle
}

TEST_CASE("christofides stays within 1.5 of the exact tour") {
  Rng rng(29);
  for (int it = 0; it < 60; ++it) {
    const int k = 3 + rng.index(10);  // 3..12 points
    const auto pts = random_points(rng, k, 50.0);
    const Point2D start{rng.uniform(0, 50), rng.uniform(0, 50)};
    const Tour hk = held_karp(pts, start);
    const ChristofidesResult ch = christofides_detail(pts, start);
    CHECK(ch.matching_exact);
    CHECK(ch.tour.length >= hk.length - 1e-9);
    CHECK(ch.tour.length <= 1.5 * hk.length + 1e-9);
    CHECK(ch.tour.waypoints.size() == pts.size() + 1);
    CHECK(ch.tour.waypoints.front() == start);
    // classical bound: the odd-set matching costs at most half the optimum
    CHECK(ch.matching_weight <= 0.5 * hk.length + 1e-9);
  }
}

TEST_CASE("held_karp on collinear points") {
  const Tour t = held_karp({{1, 0}, {2, 0}}, {0, 0});
  CHECK(t.length == Catch::Approx(4.0));
}

TEST_CASE("held_karp with a single point is out-and-back") {
  const Tour t = held_karp({{3, 4}}, {0, 0});
  CHECK(t.length == Catch::Approx(10.0));
  CHECK(t.waypoints.size() == 2);
}

TEST_CASE("held_karp matches factorial brute force") {
  Rng rng(31);
  for (int it = 0; it < 25; ++it) {
    const int k = 2 + rng.index(7);  // 2..8 points
    const auto pts = random_points(rng, k, 30.0);
    const Point2D start{rng.uniform(0, 30), rng.uniform(0, 30)};
    const Tour hk = held_karp(pts, start);
    CHECK(hk.length == Catch::Approx(brute_force_tour(pts, start)).margin(1e-9));
  }
}

TEST_CASE("held_karp rejects oversized inputs") {
  Rng rng(37);
  const auto pts = random_points(rng, 21, 10.0);
  CHECK_THROWS_AS(held_karp(pts, Point2D{0, 0}), InstanceTooLarge);
}

TEST_CASE("tour length is invariant under rigid motion") {
  Rng rng(39);
  for (int it = 0; it < 20; ++it) {
    const int k = 4 + rng.index(6);
    const auto pts = random_points(rng, k, 40.0);
    const Point2D start{rng.uniform(0, 40), rng.uniform(0, 40)};
    const double ang = rng.uniform(0, 2 * std::acos(-1.0));
    const Vec2 shift{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    auto rot = [&](Point2D p) {
      return Point2D{p.x * std::cos(ang) - p.y * std::sin(ang) + shift.x,
                     p.x * std::sin(ang) + p.y * std::cos(ang) + shift.y};
    };
    std::vector<Point2D> moved;
    for (Point2D p : pts) moved.push_back(rot(p));
    const double a = christofides(pts, start).length;
    const double b = christofides(moved, rot(start)).length;
    CHECK(b == Catch::Approx(a).epsilon(1e-6));
  }
}

TEST_CASE("matching branch and bound agrees with pairing brute force") {
  Rng rng(47);
  for (int it = 0; it < 20; ++it) {
    const int k = 2 * (2 + rng.index(3));  // 4, 6, 8 vertices
    const auto pts = random_points(rng, k, 20.0);
    std::vector<std::vector<double>> d(k, std::vector<double>(k, 0.0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) d[i][j] = distance(pts[i], pts[j]);
    const MatchingResult m = min_weight_matching(d);
    CHECK(m.exact);

    // brute force over all perfect matchings
    std::vector<int> verts(k);
    std::iota(verts.begin(), verts.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    auto rec = [&](auto&& self, std::vector<int>& rem, double acc) -> void {
      if (rem.empty()) {
        best = std::min(best, acc);
        return;
      }
      const int a = rem.front();
      for (std::size_t i = 1; i < rem.size(); ++i) {
        std::vector<int> next;
        for (std::size_t j = 1; j < rem.size(); ++j)
          if (j != i) next.push_back(rem[j]);
        self(self, next, acc + d[a][rem[i]]);
      }
    };
    rec(rec, verts, 0.0);
    CHECK(m.weight == Catch::Approx(best).margin(1e-9));
  }
}
