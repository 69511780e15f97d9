#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace coverplan {

// Boundary equality counts as observable, so comparisons against the
// observation angle and range carry a small tolerance.
constexpr double kAngleTol = 1e-9;  // radians
constexpr double kDistTol = 1e-9;   // meters

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

using Vec2 = Point2D;

inline Vec2 operator-(Point2D a, Point2D b) { return {a.x - b.x, a.y - b.y}; }
inline Point2D operator+(Point2D a, Vec2 v) { return {a.x + v.x, a.y + v.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline bool operator==(Point2D a, Point2D b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point2D a, Point2D b) { return !(a == b); }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline double distance(Point2D p, Point2D q) { return std::hypot(p.x - q.x, p.y - q.y); }

// Angle between two vectors, in [0, pi].
inline double angle_between(Vec2 u, Vec2 v) {
  return std::atan2(std::fabs(cross(u, v)), dot(u, v));
}

// Axis-aligned rectangular object; length is the x extent, width the y extent.
struct RectObject {
  int id = 0;
  Point2D center;
  double length = 0.0;
  double width = 0.0;
};

// One rectangle edge. The inward normal points from the exterior viewing
// half-plane into the object, so a camera directly facing the side sees both
// endpoint vectors within the observation angle of the normal.
struct Side {
  int id = 0;      // 1-based, in [1, 4n]
  int object = 0;  // owning object id
  Point2D a;
  Point2D b;
  Vec2 inward_normal;
  Point2D midpoint;
};

struct ObservationParams {
  double theta = 0.0;  // max observation angle (half-aperture), radians
  double d_max = 0.0;
  double d_min = 0.0;
  double perception_radius = 0.0;
};

// The 4 sides in order bottom, right, top, left; ids 4*object.id + 1 .. + 4.
inline std::array<Side, 4> sides_of(const RectObject& o) {
  const double hx = o.length / 2.0;
  const double hy = o.width / 2.0;
  const Point2D bl{o.center.x - hx, o.center.y - hy};
  const Point2D br{o.center.x + hx, o.center.y - hy};
  const Point2D tl{o.center.x - hx, o.center.y + hy};
  const Point2D tr{o.center.x + hx, o.center.y + hy};
  const int base = 4 * o.id;
  auto make = [&](int k, Point2D a, Point2D b, Vec2 t) {
    return Side{base + k, o.id, a, b, t, Point2D{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}};
  };
  return {make(1, bl, br, Vec2{0.0, 1.0}), make(2, br, tr, Vec2{-1.0, 0.0}),
          make(3, tl, tr, Vec2{0.0, -1.0}), make(4, bl, tl, Vec2{1.0, 0.0})};
}

// A side is efficiently observed from p iff both endpoints lie within
// [d_min, d_max], both endpoint vectors are within theta of the inward
// normal, and p is strictly on the exterior side of the supporting line.
inline bool efficiently_observes(Point2D p, const Side& s, const ObservationParams& params) {
  const double da = distance(p, s.a);
  const double db = distance(p, s.b);
  if (da > params.d_max + kDistTol || db > params.d_max + kDistTol) return false;
  if (da < params.d_min - kDistTol || db < params.d_min - kDistTol) return false;
  // exterior test, equivalent to angle(t, q - p) < 90 degrees
  if (!(dot(s.inward_normal, s.midpoint - p) > 0.0)) return false;
  if (angle_between(s.inward_normal, s.a - p) > params.theta + kAngleTol) return false;
  if (angle_between(s.inward_normal, s.b - p) > params.theta + kAngleTol) return false;
  return true;
}

inline bool strictly_inside(Point2D p, const RectObject& o) {
  const double hx = o.length / 2.0;
  const double hy = o.width / 2.0;
  return p.x > o.center.x - hx && p.x < o.center.x + hx && p.y > o.center.y - hy &&
         p.y < o.center.y + hy;
}

inline bool inside_any_object(Point2D p, const std::vector<RectObject>& objects) {
  for (const RectObject& o : objects)
    if (strictly_inside(p, o)) return true;
  return false;
}

// Separation between the boundaries of two axis-aligned rectangles
// (0 when they touch or overlap).
inline double rect_gap(const RectObject& a, const RectObject& b) {
  const double dx =
      std::max(0.0, std::fabs(a.center.x - b.center.x) - (a.length + b.length) / 2.0);
  const double dy =
      std::max(0.0, std::fabs(a.center.y - b.center.y) - (a.width + b.width) / 2.0);
  return std::hypot(dx, dy);
}

}  // namespace coverplan
