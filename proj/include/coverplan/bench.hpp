#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "coverplan/errors.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/io.hpp"
#include "coverplan/offline.hpp"
#include "coverplan/online.hpp"
#include "coverplan/oracle.hpp"
#include "coverplan/rng.hpp"

namespace coverplan {

inline double deg2rad(double deg) { return deg * std::acos(-1.0) / 180.0; }

// Experiment-scale instance parameters: 120 m map with 10 m padding, object
// footprints 1x2 / 2x2 / 1x1, observation range [1 m, 4 m], 120-degree visual
// angle (60-degree half-aperture), 40 m perception radius.
struct GenSpec {
  double map_side = 120.0;
  double padding = 10.0;
  std::vector<std::pair<double, double>> size_choices = {{1.0, 2.0}, {2.0, 2.0}, {1.0, 1.0}};
  double d_max = 4.0;
  double d_min = 1.0;
  double theta = deg2rad(60.0);
  double perception = 40.0;
  int n = 5;
  std::uint64_t seed = 1;
};

// Rejection-sample non-overlapping objects uniformly inside the padded map,
// redrawing the whole layout until every object has another object closer
// than the perception range (the connectivity assumption). Rectangle
// boundaries keep a gap of at least 2*d_min so observation frustums stay
// non-degenerate. The start is uniform in free space, perceives at least one
// object, and (when geometrically possible) leaves at least one object
// undiscovered so the online setting is not degenerate.
inline Instance generate_instance(const GenSpec& spec) {
  if (spec.n < 2) throw InstanceTooSmall("instance generation needs n >= 2");
  Rng rng(spec.seed);
  const long budget = 100000;
  long draws = 0;

  Instance inst;
  inst.map_side = spec.map_side;
  inst.padding = spec.padding;
  inst.params.theta = spec.theta;
  inst.params.d_max = spec.d_max;
  inst.params.d_min = spec.d_min;
  inst.params.perception_radius = spec.perception;
  inst.seed = spec.seed;

  for (;;) {
    inst.objects.clear();
    for (int k = 0; k < spec.n; ++k) {
      for (;;) {
        if (++draws > budget)
          throw GenerationFailed("object placement exceeded the draw budget");
        const auto [l, w] =
            spec.size_choices[rng.index(static_cast<int>(spec.size_choices.size()))];
        RectObject o;
        o.id = k;
        o.length = l;
        o.width = w;
        o.center.x = rng.uniform(spec.padding + l / 2.0, spec.map_side - spec.padding - l / 2.0);
        o.center.y = rng.uniform(spec.padding + w / 2.0, spec.map_side - spec.padding - w / 2.0);
        bool ok = true;
        for (const RectObject& other : inst.objects) {
          if (rect_gap(o, other) < 2.0 * spec.d_min) {
            ok = false;
            break;
          }
        }
        if (ok) {
          inst.objects.push_back(o);
          break;
        }
      }
    }
    bool connected = true;
    for (const RectObject& o : inst.objects) {
      bool near = false;
      for (const RectObject& other : inst.objects)
        if (other.id != o.id && distance(o.center, other.center) < spec.perception) near = true;
      if (!near) connected = false;
    }
    if (connected) break;
    if (draws > budget) throw GenerationFailed("connectivity assumption not reached");
  }

  // Start placement: free space, at least one object within perception; try
  // for at least one object beyond perception first.
  Point2D fallback{};
  bool have_fallback = false;
  for (long tries = 0; tries < budget; ++tries) {
    Point2D p{rng.uniform(spec.padding, spec.map_side - spec.padding),
              rng.uniform(spec.padding, spec.map_side - spec.padding)};
    if (inside_any_object(p, inst.objects)) continue;
    bool near = false;
    bool far = false;
    for (const RectObject& o : inst.objects) {
      const double d = distance(p, o.center);
      if (d <= spec.perception) near = true;
      if (d > spec.perception) far = true;
    }
    if (!near) continue;
    if (!have_fallback) {
      fallback = p;
      have_fallback = true;
    }
    if (far || tries >= budget / 4) {
      inst.start = p;
      return inst;
    }
  }
  if (have_fallback) {
    inst.start = fallback;
    return inst;
  }
  throw GenerationFailed("could not place a start that perceives an object");
}

struct MetricsRow {
  std::string algorithm;
  int n = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  double length = 0.0;
  double lb = 0.0;
  double ratio_lb = 0.0;
  std::optional<double> ratio_oracle;
  double runtime_s = 0.0;
  std::string status = "ok";
};

inline const char* kCsvHeader = "algorithm,n,epsilon,seed,length,lb,ratio_lb,ratio_oracle,runtime_s,status";

inline void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << kCsvHeader << "\n";
  for (const MetricsRow& r : rows) {
    os << r.algorithm << "," << r.n << "," << fmt_g17(r.epsilon) << "," << r.seed << ","
       << fmt_fixed(r.length, 6) << "," << fmt_fixed(r.lb, 6) << "," << fmt_fixed(r.ratio_lb, 6)
       << "," << (r.ratio_oracle ? fmt_fixed(*r.ratio_oracle, 6) : std::string()) << ","
       << fmt_fixed(r.runtime_s, 6) << "," << r.status << "\n";
  }
}

inline int suite_threads() {
  if (const char* env = std::getenv("COVERPLAN_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

struct SuiteConfig {
  std::vector<int> n_list = {2, 3, 5, 10};
  std::vector<double> epsilon_list = {0.3, 0.5};
  int repeats = 5;
  std::vector<std::string> algorithms = {"offline", "nof", "ci", "batsp"};
  GenSpec base;
  OracleCaps caps;
  std::uint64_t seed_base = 1;
  int threads = suite_threads();
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline std::string error_tag(const std::exception& e) {
  if (dynamic_cast<const InstanceTooLarge*>(&e)) return "error:InstanceTooLarge";
  if (dynamic_cast<const ModelTooLarge*>(&e)) return "error:ModelTooLarge";
  if (dynamic_cast<const SideUncoverable*>(&e)) return "error:SideUncoverable";
  if (dynamic_cast<const GenerationFailed*>(&e)) return "error:GenerationFailed";
  if (dynamic_cast<const InstanceTooSmall*>(&e)) return "error:InstanceTooSmall";
  if (dynamic_cast<const NonTerminating*>(&e)) return "error:NonTerminating";
  if (dynamic_cast<const GraphDisconnected*>(&e)) return "error:GraphDisconnected";
  if (dynamic_cast<const InvalidParameter*>(&e)) return "error:InvalidParameter";
  return "error:DomainError";
}

// One (n, epsilon, seed) cell: generate, plan offline for the lower bound,
// then run the requested algorithms against it.
inline std::vector<MetricsRow> run_cell(const SuiteConfig& cfg, int n, double eps,
                                        std::uint64_t seed) {
  std::vector<MetricsRow> rows;
  auto base_row = [&](const std::string& alg) {
    MetricsRow r;
    r.algorithm = alg;
    r.n = n;
    r.epsilon = eps;
    r.seed = seed;
    return r;
  };
  auto has = [&](const std::string& alg) {
    for (const std::string& a : cfg.algorithms)
      if (a == alg) return true;
    return false;
  };

  GenSpec gs = cfg.base;
  gs.n = n;
  gs.seed = seed;
  Instance inst;
  try {
    inst = generate_instance(gs);
  } catch (const DomainError& e) {
    for (const std::string& alg : cfg.algorithms) {
      MetricsRow r = base_row(alg);
      r.status = error_tag(e);
      rows.push_back(r);
    }
    return rows;
  }

  double lb = 0.0;
  std::optional<double> oracle_len;
  OfflinePlan plan;
  std::string offline_status = "ok";
  double offline_time = 0.0;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    plan = plan_offline(inst, eps);
    offline_time = seconds_since(t0);
    lb = plan.lb;
  } catch (const DomainError& e) {
    offline_status = error_tag(e);
  }

  if (offline_status != "ok") {
    for (const std::string& alg : cfg.algorithms) {
      MetricsRow r = base_row(alg);
      r.status = offline_status;
      rows.push_back(r);
    }
    return rows;
  }

  if (has("oracle")) {
    MetricsRow r = base_row("oracle");
    try {
      const auto t0 = std::chrono::steady_clock::now();
      const Tour t = exact_optimum(inst, eps, cfg.caps);
      r.runtime_s = seconds_since(t0);
      r.length = t.length;
      r.lb = lb;
      r.ratio_lb = lb > 0 ? t.length / lb : 0.0;
      r.ratio_oracle = 1.0;
      oracle_len = t.length;
    } catch (const DomainError& e) {
      r.status = error_tag(e);
    }
    rows.push_back(r);
  }

  if (has("offline")) {
    MetricsRow r = base_row("offline");
    r.length = plan.tour.length;
    r.lb = lb;
    r.ratio_lb = lb > 0 ? plan.tour.length / lb : 0.0;
    if (oracle_len) r.ratio_oracle = plan.tour.length / *oracle_len;
    r.runtime_s = offline_time;
    rows.push_back(r);
  }

  for (const std::string& alg : {std::string("nof"), std::string("ci"), std::string("batsp")}) {
    if (!has(alg)) continue;
    MetricsRow r = base_row(alg);
    try {
      const auto t0 = std::chrono::steady_clock::now();
      OnlineSim sim(inst, eps);
      const SimResult res = alg == "nof" ? sim.run_nof()
                            : alg == "ci" ? sim.run_ci()
                                          : sim.run_batsp();
      r.runtime_s = seconds_since(t0);
      r.length = res.length;
      r.lb = lb;
      r.ratio_lb = lb > 0 ? res.length / lb : 0.0;
      if (oracle_len) r.ratio_oracle = res.length / *oracle_len;
      if (!res.complete) r.status = "error:IncompleteCoverage";
    } catch (const DomainError& e) {
      r.status = error_tag(e);
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace detail

// Cross product of settings and seeds; cells may run on a small worker pool
// (COVERPLAN_THREADS) and the row order stays deterministic.
inline std::vector<MetricsRow> run_suite(const SuiteConfig& cfg) {
  struct Cell {
    int n;
    double eps;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (int n : cfg.n_list)
    for (double eps : cfg.epsilon_list)
      for (int rep = 0; rep < cfg.repeats; ++rep)
        cells.push_back(Cell{n, eps, cfg.seed_base + static_cast<std::uint64_t>(rep)});

  std::vector<std::vector<MetricsRow>> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      results[i] = detail::run_cell(cfg, cells[i].n, cells[i].eps, cells[i].seed);
    }
  };
  const int workers = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cells.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<MetricsRow> rows;
  for (const auto& cell_rows : results)
    rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
  return rows;
}

}  // namespace coverplan
