#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/offline.hpp"
#include "coverplan/online.hpp"

namespace coverplan {

// %.17g: doubles round-trip exactly and the byte output is deterministic.
inline std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fmt_fixed(double v, int prec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hash_hex(std::string_view s) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

namespace detail {

// Line reader that tracks the current line number for error reporting.
class LineReader {
public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      return true;
    }
    return false;
  }

  std::string expect(const std::string& key) {
    std::string line;
    if (!next(line)) throw ParseError("unexpected end of file, expected '" + key + "'", line_no_);
    if (line.size() < key.size() || line.compare(0, key.size(), key) != 0 ||
        (line.size() > key.size() && line[key.size()] != ' '))
      throw ParseError("expected '" + key + "', got '" + line + "'", line_no_);
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
  }

  int line_no() const { return line_no_; }

  double to_double(const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("malformed number '" + s + "'", line_no_);
    }
  }

  long to_long(const std::string& s) {
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ParseError("malformed integer '" + s + "'", line_no_);
    }
  }

  std::vector<std::string> fields(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string f;
    while (is >> f) out.push_back(f);
    return out;
  }

private:
  std::istream& in_;
  int line_no_ = 0;
};

}  // namespace detail

inline void write_instance(std::ostream& os, const Instance& inst) {
  os << "coverplan-instance v1\n";
  os << "map_side " << fmt_g17(inst.map_side) << "\n";
  os << "padding " << fmt_g17(inst.padding) << "\n";
  os << "theta " << fmt_g17(inst.params.theta) << "\n";
  os << "d_max " << fmt_g17(inst.params.d_max) << "\n";
  os << "d_min " << fmt_g17(inst.params.d_min) << "\n";
  os << "perception " << fmt_g17(inst.params.perception_radius) << "\n";
  os << "seed " << inst.seed << "\n";
  os << "start " << fmt_g17(inst.start.x) << " " << fmt_g17(inst.start.y) << "\n";
  os << "objects " << inst.objects.size() << "\n";
  for (const RectObject& o : inst.objects)
    os << "object " << o.id << " " << fmt_g17(o.center.x) << " " << fmt_g17(o.center.y) << " "
       << fmt_g17(o.length) << " " << fmt_g17(o.width) << "\n";
}

inline std::string instance_text(const Instance& inst) {
  std::ostringstream os;
  write_instance(os, inst);
  return os.str();
}

inline std::string instance_hash(const Instance& inst) { return hash_hex(instance_text(inst)); }

inline Instance read_instance(std::istream& in) {
  detail::LineReader r(in);
  std::string line;
  if (!r.next(line) || line != "coverplan-instance v1")
    throw ParseError("not a coverplan-instance v1 document", r.line_no());
  Instance inst;
  inst.map_side = r.to_double(r.expect("map_side"));
  inst.padding = r.to_double(r.expect("padding"));
  inst.params.theta = r.to_double(r.expect("theta"));
  inst.params.d_max = r.to_double(r.expect("d_max"));
  inst.params.d_min = r.to_double(r.expect("d_min"));
  inst.params.perception_radius = r.to_double(r.expect("perception"));
  inst.seed = static_cast<std::uint64_t>(r.to_long(r.expect("seed")));
  {
    const auto f = r.fields(r.expect("start"));
    if (f.size() != 2) throw ParseError("start needs two coordinates", r.line_no());
    inst.start = {r.to_double(f[0]), r.to_double(f[1])};
  }
  const long n = r.to_long(r.expect("objects"));
  for (long i = 0; i < n; ++i) {
    const auto f = r.fields(r.expect("object"));
    if (f.size() != 5) throw ParseError("object needs id, center, length, width", r.line_no());
    RectObject o;
    o.id = static_cast<int>(r.to_long(f[0]));
    o.center = {r.to_double(f[1]), r.to_double(f[2])};
    o.length = r.to_double(f[3]);
    o.width = r.to_double(f[4]);
    if (o.id != static_cast<int>(i)) throw ParseError("object ids must be 0..n-1", r.line_no());
    inst.objects.push_back(o);
  }
  validate_instance(inst);
  return inst;
}

// Serialized offline (or oracle) plan.
struct PlanDoc {
  std::string algorithm = "offline";
  std::string instance_hash;
  double epsilon = 0.0;
  double length = 0.0;
  double lb = 0.0;
  double ratio_bound = 0.0;
  double t_left = 0.0;
  double max_dist = 0.0;
  double delta = 0.0;
  bool matching_exact = true;
  std::vector<int> selected;
  std::vector<Point2D> waypoints;
};

inline void write_plan(std::ostream& os, const PlanDoc& p) {
  os << "coverplan-plan v1\n";
  os << "instance " << p.instance_hash << "\n";
  os << "algorithm " << p.algorithm << "\n";
  os << "epsilon " << fmt_g17(p.epsilon) << "\n";
  os << "length " << fmt_g17(p.length) << "\n";
  os << "lb " << fmt_g17(p.lb) << "\n";
  os << "ratio_bound " << fmt_g17(p.ratio_bound) << "\n";
  os << "t_left " << fmt_g17(p.t_left) << "\n";
  os << "max_dist " << fmt_g17(p.max_dist) << "\n";
  os << "delta " << fmt_g17(p.delta) << "\n";
  os << "matching_exact " << (p.matching_exact ? 1 : 0) << "\n";
  os << "selected " << p.selected.size();
  for (int id : p.selected) os << " " << id;
  os << "\n";
  os << "waypoints " << p.waypoints.size() << "\n";
  for (const Point2D& w : p.waypoints)
    os << "wp " << fmt_g17(w.x) << " " << fmt_g17(w.y) << "\n";
}

inline PlanDoc read_plan(std::istream& in) {
  detail::LineReader r(in);
  std::string line;
  if (!r.next(line) || line != "coverplan-plan v1")
    throw ParseError("not a coverplan-plan v1 document", r.line_no());
  PlanDoc p;
  p.instance_hash = r.expect("instance");
  p.algorithm = r.expect("algorithm");
  p.epsilon = r.to_double(r.expect("epsilon"));
  p.length = r.to_double(r.expect("length"));
  p.lb = r.to_double(r.expect("lb"));
  p.ratio_bound = r.to_double(r.expect("ratio_bound"));
  p.t_left = r.to_double(r.expect("t_left"));
  p.max_dist = r.to_double(r.expect("max_dist"));
  p.delta = r.to_double(r.expect("delta"));
  p.matching_exact = r.to_long(r.expect("matching_exact")) != 0;
  {
    const auto f = r.fields(r.expect("selected"));
    if (f.empty()) throw ParseError("selected needs a count", r.line_no());
    const long k = r.to_long(f[0]);
    if (static_cast<long>(f.size()) != k + 1)
      throw ParseError("selected count mismatch", r.line_no());
    for (long i = 1; i <= k; ++i) p.selected.push_back(static_cast<int>(r.to_long(f[i])));
  }
  const long m = r.to_long(r.expect("waypoints"));
  for (long i = 0; i < m; ++i) {
    const auto f = r.fields(r.expect("wp"));
    if (f.size() != 2) throw ParseError("wp needs two coordinates", r.line_no());
    p.waypoints.push_back({r.to_double(f[0]), r.to_double(f[1])});
  }
  return p;
}

inline PlanDoc make_plan_doc(const Instance& inst, const OfflinePlan& plan,
                             const std::string& algorithm = "offline") {
  PlanDoc doc;
  doc.algorithm = algorithm;
  doc.instance_hash = instance_hash(inst);
  doc.epsilon = plan.epsilon;
  doc.length = plan.tour.length;
  doc.lb = plan.lb;
  doc.ratio_bound = plan.ratio_bound;
  doc.t_left = plan.t_left_cost;
  doc.max_dist = plan.max_dist;
  doc.delta = plan.delta;
  doc.matching_exact = plan.matching_exact;
  doc.selected = plan.selected_points;
  doc.waypoints = plan.tour.waypoints;
  return doc;
}

// Serialized online run: the positions flown plus the covered-side events.
struct TraceDoc {
  std::string algorithm = "nof";
  std::string instance_hash;
  double epsilon = 0.0;
  double length = 0.0;
  long steps = 0;
  bool complete = false;
  std::vector<Point2D> positions;
  std::vector<CoverEvent> events;
};

inline void write_trace(std::ostream& os, const TraceDoc& t) {
  os << "coverplan-trace v1\n";
  os << "instance " << t.instance_hash << "\n";
  os << "algorithm " << t.algorithm << "\n";
  os << "epsilon " << fmt_g17(t.epsilon) << "\n";
  os << "length " << fmt_g17(t.length) << "\n";
  os << "steps " << t.steps << "\n";
  os << "complete " << (t.complete ? 1 : 0) << "\n";
  os << "positions " << t.positions.size() << "\n";
  for (const Point2D& p : t.positions) os << "pos " << fmt_g17(p.x) << " " << fmt_g17(p.y) << "\n";
  os << "events " << t.events.size() << "\n";
  for (const CoverEvent& e : t.events) os << "cover " << e.step << " " << e.side << "\n";
}

inline TraceDoc read_trace(std::istream& in) {
  detail::LineReader r(in);
  std::string line;
  if (!r.next(line) || line != "coverplan-trace v1")
    throw ParseError("not a coverplan-trace v1 document", r.line_no());
  TraceDoc t;
  t.instance_hash = r.expect("instance");
  t.algorithm = r.expect("algorithm");
  t.epsilon = r.to_double(r.expect("epsilon"));
  t.length = r.to_double(r.expect("length"));
  t.steps = r.to_long(r.expect("steps"));
  t.complete = r.to_long(r.expect("complete")) != 0;
  const long m = r.to_long(r.expect("positions"));
  for (long i = 0; i < m; ++i) {
    const auto f = r.fields(r.expect("pos"));
    if (f.size() != 2) throw ParseError("pos needs two coordinates", r.line_no());
    t.positions.push_back({r.to_double(f[0]), r.to_double(f[1])});
  }
  const long k = r.to_long(r.expect("events"));
  for (long i = 0; i < k; ++i) {
    const auto f = r.fields(r.expect("cover"));
    if (f.size() != 2) throw ParseError("cover needs step and side", r.line_no());
    t.events.push_back(CoverEvent{r.to_long(f[0]), static_cast<int>(r.to_long(f[1]))});
  }
  return t;
}

inline TraceDoc make_trace_doc(const Instance& inst, const SimResult& res,
                               const std::string& algorithm, double epsilon) {
  TraceDoc doc;
  doc.algorithm = algorithm;
  doc.instance_hash = instance_hash(inst);
  doc.epsilon = epsilon;
  doc.length = res.length;
  doc.steps = res.steps;
  doc.complete = res.complete;
  doc.positions = res.trace;
  doc.events = res.events;
  return doc;
}

// Deterministic SVG: objects as rectangles, viewpoints as dots, the route as
// a polyline. A plan polyline is closed by repeating its first vertex.
inline void render_svg(std::ostream& os, const Instance& inst,
                       const std::vector<Point2D>& route, bool close_route,
                       const std::vector<Point2D>& dots) {
  if (route.empty()) throw DomainError("refusing to render an empty route");
  const double side = inst.map_side;
  auto X = [&](double x) { return fmt_fixed(x, 3); };
  auto Y = [&](double y) { return fmt_fixed(side - y, 3); };  // svg y grows downward
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << X(side) << " " << X(side)
     << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << X(side) << "\" height=\"" << X(side)
     << "\" fill=\"white\" stroke=\"none\"/>\n";
  for (const RectObject& o : inst.objects) {
    os << "<rect x=\"" << X(o.center.x - o.length / 2.0) << "\" y=\""
       << Y(o.center.y + o.width / 2.0) << "\" width=\"" << X(o.length) << "\" height=\""
       << X(o.width) << "\" fill=\"#888888\" stroke=\"black\" stroke-width=\"0.1\"/>\n";
  }
  os << "<polyline points=\"";
  for (std::size_t i = 0; i < route.size(); ++i) {
    if (i) os << " ";
    os << X(route[i].x) << "," << Y(route[i].y);
  }
  if (close_route) os << " " << X(route[0].x) << "," << Y(route[0].y);
  os << "\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"0.3\"/>\n";
  for (const Point2D& p : dots)
    os << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y)
       << "\" r=\"0.6\" fill=\"#d62728\"/>\n";
  os << "<circle cx=\"" << X(inst.start.x) << "\" cy=\"" << Y(inst.start.y)
     << "\" r=\"0.9\" fill=\"#2ca02c\"/>\n";
  os << "</svg>\n";
}

}  // namespace coverplan
