#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "coverplan/geometry.hpp"
#include "coverplan/rng.hpp"

using namespace coverplan;

namespace {

ObservationParams params(double theta_deg, double d_max, double d_min) {
  ObservationParams p;
  p.theta = theta_deg * std::acos(-1.0) / 180.0;
  p.d_max = d_max;
  p.d_min = d_min;
  p.perception_radius = 40.0;
  return p;
}

Side make_side(Point2D a, Point2D b, Vec2 t) {
  return Side{1, 0, a, b, t, Point2D{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}};
}

}  // namespace

TEST_CASE("sides_of unit square") {
  const RectObject o{0, {0.0, 0.0}, 1.0, 1.0};
  const auto sides = sides_of(o);
  const Side& bottom = sides[0];
  CHECK(bottom.id == 1);
  CHECK(bottom.a == Point2D{-0.5, -0.5});
  CHECK(bottom.b == Point2D{0.5, -0.5});
  CHECK(bottom.midpoint == Point2D{0.0, -0.5});
  CHECK(bottom.inward_normal == Vec2{0.0, 1.0});
  CHECK(sides[1].id == 2);
  CHECK(sides[3].id == 4);
}

TEST_CASE("sides_of uses half-length offsets") {
  const RectObject o{0, {0.0, 0.0}, 2.0, 1.0};
  const auto sides = sides_of(o);
  const Side& right = sides[1];
  CHECK(right.midpoint == Point2D{1.0, 0.0});
  CHECK(right.inward_normal == Vec2{-1.0, 0.0});
}

TEST_CASE("side midpoints average to the center") {
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    RectObject o;
    o.id = it;
    o.center = {rng.uniform(-50, 50), rng.uniform(-50, 50)};
    o.length = rng.uniform(0.5, 5.0);
    o.width = rng.uniform(0.5, 5.0);
    double mx = 0, my = 0;
    for (const Side& s : sides_of(o)) {
      mx += s.midpoint.x;
      my += s.midpoint.y;
      // invariants: q = (a+b)/2, t unit and perpendicular to b-a
      CHECK(norm(s.inward_normal) == Catch::Approx(1.0));
      CHECK(std::fabs(dot(s.inward_normal, s.b - s.a)) < 1e-12);
    }
    CHECK(mx / 4.0 == Catch::Approx(o.center.x));
    CHECK(my / 4.0 == Catch::Approx(o.center.y));
  }
}

TEST_CASE("efficient observation accepts the frontal viewpoint") {
  // independent oracle: angles and distances computed analytically
  const Side s = make_side({0, 0}, {2, 0}, {0, 1});
  const Point2D p{1.0, -1.0};
  const double angle_a = std::acos(dot(Vec2{0, 1}, s.a - p) / norm(s.a - p));
  const double angle_b = std::acos(dot(Vec2{0, 1}, s.b - p) / norm(s.b - p));
  CHECK(angle_a == Catch::Approx(std::acos(-1.0) / 4.0));  // 45 degrees
  CHECK(angle_b == Catch::Approx(std::acos(-1.0) / 4.0));
  CHECK(norm(s.a - p) == Catch::Approx(std::sqrt(2.0)));
  CHECK(efficiently_observes(p, s, params(60, 4, 0)));
}

TEST_CASE("efficient observation rejects out-of-range and back side") {
  const Side s = make_side({0, 0}, {2, 0}, {0, 1});
  CHECK_FALSE(efficiently_observes({1.0, -5.0}, s, params(60, 4, 0)));  // too far
  CHECK_FALSE(efficiently_observes({1.0, 1.0}, s, params(60, 4, 0)));   // behind the side
}

TEST_CASE("range boundary counts as observable") {
  // 3-4-5 construction: distances to both endpoints are exactly d_max
  const Side s = make_side({-3, 0}, {3, 0}, {0, 1});
  CHECK(efficiently_observes({0.0, -4.0}, s, params(60, 5, 0)));
  CHECK_FALSE(efficiently_observes({0.0, -4.0}, s, params(60, 5 - 1e-6, 0)));
}

TEST_CASE("d_min excludes close viewpoints") {
  const Side s = make_side({0, 0}, {2, 0}, {0, 1});
  CHECK_FALSE(efficiently_observes({1.0, -0.2}, s, params(60, 4, 1.0)));
}

TEST_CASE("distance basics") {
  CHECK(distance({0, 0}, {3, 4}) == 5.0);
  CHECK(distance({1, 1}, {1, 1}) == 0.0);
  CHECK(distance({0, 0}, {1, 0}) == 1.0);
  CHECK(distance({0, 0}, {3, 4}) == distance({3, 4}, {0, 0}));
}

TEST_CASE("observation predicate is translation invariant") {
  Rng rng(11);
  const ObservationParams pr = params(60, 4, 1);
  for (int it = 0; it < 200; ++it) {
    const Point2D a{rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double ang = rng.uniform(0, 2 * std::acos(-1.0));
    const double len = rng.uniform(0.5, 3.0);
    const Point2D b = a + Vec2{len * std::cos(ang), len * std::sin(ang)};
    Vec2 t{-(b - a).y / len, (b - a).x / len};
    Side s = make_side(a, b, t);
    const Point2D p{rng.uniform(-8, 8), rng.uniform(-8, 8)};
    const bool before = efficiently_observes(p, s, pr);
    const Vec2 shift{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    Side s2 = make_side(a + shift, b + shift, t);
    CHECK(efficiently_observes(p + shift, s2, pr) == before);
  }
}

TEST_CASE("exterior test matches the right-angle formulation") {
  Rng rng(13);
  const ObservationParams pr = params(60, 4, 0);
  int front = 0;
  for (int it = 0; it < 500; ++it) {
    const Side s = make_side({-1, 0}, {1, 0}, {0, 1});
    const Point2D p{rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const bool exterior = angle_between(s.inward_normal, s.midpoint - p) <
                          std::acos(-1.0) / 2.0;
    if (!exterior) CHECK_FALSE(efficiently_observes(p, s, pr));
    if (efficiently_observes(p, s, pr)) ++front;
  }
  CHECK(front > 0);
}

TEST_CASE("frustum is non-empty for workable parameter sets") {
  // p' = q - d' * t with d' = d_max cos(theta) always observes the side when
  // d_max cos(theta) > d_min and d_max cos(theta) >= |b-a| / (2 tan(theta)).
  Rng rng(17);
  const ObservationParams pr = params(60, 4, 1);
  const double dprime = pr.d_max * std::cos(pr.theta);
  REQUIRE(dprime > pr.d_min);
  for (int it = 0; it < 100; ++it) {
    RectObject o;
    o.id = 0;
    o.center = {rng.uniform(-40, 40), rng.uniform(-40, 40)};
    o.length = rng.index(2) ? 1.0 : 2.0;
    o.width = rng.index(2) ? 1.0 : 2.0;
    for (const Side& s : sides_of(o)) {
      const double halfside = distance(s.a, s.b) / 2.0;
      REQUIRE(dprime >= halfside / std::tan(pr.theta));
      const Point2D p = s.midpoint + (-dprime) * s.inward_normal;
      CHECK(efficiently_observes(p, s, pr));
    }
  }
}
