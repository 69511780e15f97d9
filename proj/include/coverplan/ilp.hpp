#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/io.hpp"
#include "coverplan/oracle.hpp"

namespace coverplan {

struct IlpCaps {
  std::uint64_t max_variables = 500000;
};

struct IlpCounts {
  std::uint64_t binary_vars = 0;  // sum over ordered zone pairs of |z_i|*|z_j|
  std::uint64_t order_vars = 0;   // one u per zone
  std::uint64_t degree_out = 0;   // one per zone
  std::uint64_t degree_in = 0;    // one per zone
  std::uint64_t flow = 0;         // one per (zone, member)
  std::uint64_t mtz = 0;          // one per (i, j, a, b), i, j non-start
};

namespace detail {

inline std::string point_label(int point_id) {
  // 0 denotes the start, k >= 1 denotes observation point k-1
  return std::to_string(point_id + 1);
}

inline std::string var_name(int zi, int zj, int a, int b) {
  return "X_" + std::to_string(zi) + "_" + std::to_string(zj) + "_" + point_label(a) + "_" +
         point_label(b);
}

// Emits "name: t1 + t2 ... <op> rhs" wrapping long rows onto continuation lines.
class RowWriter {
public:
  RowWriter(std::ostream& os, std::string name) : os_(os) { os_ << " " << name << ":"; }
  void term(const std::string& t) {
    os_ << " " << t;
    if (++count_ % 8 == 0) os_ << "\n  ";
  }
  void finish(const std::string& tail) { os_ << " " << tail << "\n"; }

private:
  std::ostream& os_;
  std::uint64_t count_ = 0;
};

}  // namespace detail

// Write the zone-TSP integer model in CPLEX LP format. Binary X_i_j_a_b picks
// the edge from point a in zone i to point b in zone j; degree rows force one
// departure and one arrival per zone, flow rows make the arrival point of a
// zone equal its departure point, and MTZ rows over the non-start zones
// eliminate subtours. Output is byte-deterministic for a fixed (instance,
// epsilon).
inline IlpCounts ilp_export(const Instance& inst, double epsilon, std::ostream& os,
                            const IlpCaps& caps = {}) {
  if (inst.n() < 2) throw InstanceTooSmall("ILP export needs at least 2 objects");
  const double max_dist = max_object_distance(inst.objects);
  const double delta = mesh_granularity(epsilon, inst.n(), max_dist);
  const std::vector<ObservationPoint> points =
      generate_observation_points(inst.objects, inst.params, delta);
  const std::vector<Zone> zones = compute_zones(points, 4 * inst.n());
  const int nz = static_cast<int>(zones.size());  // N = 4n + 1

  IlpCounts counts;
  counts.order_vars = nz;
  counts.degree_out = nz;
  counts.degree_in = nz;
  std::uint64_t total_members = 0;
  for (const Zone& z : zones) total_members += z.members.size();
  counts.flow = total_members;
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nz; ++j) {
      if (i == j) continue;
      const std::uint64_t block =
          static_cast<std::uint64_t>(zones[i].members.size()) * zones[j].members.size();
      counts.binary_vars += block;
      if (zones[i].id != 1 && zones[j].id != 1) counts.mtz += block;
    }
  if (counts.binary_vars > caps.max_variables)
    throw ModelTooLarge("model needs " + std::to_string(counts.binary_vars) +
                        " binary variables, cap is " + std::to_string(caps.max_variables));

  auto pos_of = [&](int point_id) -> Point2D {
    return point_id == kStartPointId ? inst.start : points[point_id].pos;
  };

  os << "\\ coverage tour over observation zones, MTZ subtour elimination\n";
  os << "\\ instance " << instance_hash(inst) << "\n";
  os << "\\ epsilon " << fmt_g17(epsilon) << "\n";
  os << "\\ zones: zone 1 = start; zone 1+r = side r; N = " << nz << "\n";
  os << "\\ X_i_j_a_b = 1 iff the tour goes from point a in zone i to point b in zone j\n";
  os << "\\ point labels: 0 = start, k >= 1 = observation point k-1\n";
  os << "\\ flow rows are written per member of zone i (the source formulation\n";
  os << "\\ quantifies the member over zone 1; zone i is the consistent reading)\n";
  os << "\\ start/end degree coupling is subsumed by the degree and flow rows of\n";
  os << "\\ the single start zone and is not emitted separately\n";
  os << "Minimize\n obj:";
  {
    std::uint64_t count = 0;
    for (int i = 0; i < nz; ++i)
      for (int j = 0; j < nz; ++j) {
        if (i == j) continue;
        for (int a : zones[i].members)
          for (int b : zones[j].members) {
            os << " " << (count ? "+ " : "") << fmt_fixed(distance(pos_of(a), pos_of(b)), 9)
               << " " << detail::var_name(zones[i].id, zones[j].id, a, b);
            if (++count % 8 == 0) os << "\n  ";
          }
      }
    os << "\n";
  }

  os << "Subject To\n";
  for (int i = 0; i < nz; ++i) {
    detail::RowWriter row(os, "out_" + std::to_string(zones[i].id));
    bool first = true;
    for (int j = 0; j < nz; ++j) {
      if (i == j) continue;
      for (int a : zones[i].members)
        for (int b : zones[j].members) {
          row.term(std::string(first ? "" : "+ ") +
                   detail::var_name(zones[i].id, zones[j].id, a, b));
          first = false;
        }
    }
    row.finish("= 1");
  }
  for (int j = 0; j < nz; ++j) {
    detail::RowWriter row(os, "in_" + std::to_string(zones[j].id));
    bool first = true;
    for (int i = 0; i < nz; ++i) {
      if (i == j) continue;
      for (int a : zones[i].members)
        for (int b : zones[j].members) {
          row.term(std::string(first ? "" : "+ ") +
                   detail::var_name(zones[i].id, zones[j].id, a, b));
          first = false;
        }
    }
    row.finish("= 1");
  }
  for (int i = 0; i < nz; ++i) {
    for (int a : zones[i].members) {
      detail::RowWriter row(os, "flow_" + std::to_string(zones[i].id) + "_" +
                                    detail::point_label(a));
      bool first = true;
      for (int j = 0; j < nz; ++j) {
        if (i == j) continue;
        for (int b : zones[j].members) {
          row.term(std::string(first ? "" : "+ ") +
                   detail::var_name(zones[i].id, zones[j].id, a, b));
          first = false;
        }
      }
      for (int j = 0; j < nz; ++j) {
        if (i == j) continue;
        for (int b : zones[j].members)
          row.term("- " + detail::var_name(zones[j].id, zones[i].id, b, a));
      }
      row.finish("= 0");
    }
  }
  for (int i = 0; i < nz; ++i) {
    if (zones[i].id == 1) continue;
    for (int j = 0; j < nz; ++j) {
      if (i == j || zones[j].id == 1) continue;
      for (int a : zones[i].members)
        for (int b : zones[j].members) {
          os << " mtz_" << zones[i].id << "_" << zones[j].id << "_" << detail::point_label(a)
             << "_" << detail::point_label(b) << ": u_" << zones[i].id << " - u_"
             << zones[j].id << " + " << nz << " "
             << detail::var_name(zones[i].id, zones[j].id, a, b) << " <= " << nz - 1 << "\n";
        }
    }
  }

  os << "Bounds\n";
  for (const Zone& z : zones) os << " u_" << z.id << " >= 0\n";

  os << "Binary\n";
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nz; ++j) {
      if (i == j) continue;
      for (int a : zones[i].members)
        for (int b : zones[j].members)
          os << " " << detail::var_name(zones[i].id, zones[j].id, a, b) << "\n";
    }
  os << "End\n";
  return counts;
}

}  // namespace coverplan
