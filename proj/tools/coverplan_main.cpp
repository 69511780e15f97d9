#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coverplan/coverplan.hpp"

namespace {

using namespace coverplan;

constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitCaps = 4;

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open instance file " + path);
  return read_instance(in);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file " + path);
  out << content;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// caps flag: "combinations[,zones[,variables]]"
void parse_caps(const std::string& s, OracleCaps& oracle_caps, IlpCaps& ilp_caps) {
  if (s.empty()) return;
  std::istringstream is(s);
  std::string field;
  int idx = 0;
  while (std::getline(is, field, ',')) {
    const long long v = std::stoll(field);
    if (v <= 0) throw CLI::ValidationError("--caps fields must be positive");
    if (idx == 0) oracle_caps.max_combinations = static_cast<std::uint64_t>(v);
    if (idx == 1) oracle_caps.max_zones = static_cast<int>(v);
    if (idx == 2) ilp_caps.max_variables = static_cast<std::uint64_t>(v);
    ++idx;
  }
}

int cmd_generate(int n, std::uint64_t seed, const std::string& out, const GenSpec& base) {
  if (n < 2) throw InstanceTooSmall("need --n >= 2");
  GenSpec spec = base;
  spec.n = n;
  spec.seed = seed;
  const Instance inst = generate_instance(spec);
  std::ostringstream os;
  write_instance(os, inst);
  write_file(out, os.str());
  std::cout << "instance=" << out << " n=" << inst.n() << " seed=" << seed
            << " hash=" << instance_hash(inst) << "\n";
  return 0;
}

int cmd_plan(const std::string& instance_path, double epsilon, const std::string& algorithm,
             const std::string& out, const OracleCaps& caps) {
  const Instance inst = load_instance(instance_path);
  const auto t0 = std::chrono::steady_clock::now();
  if (algorithm == "offline" || algorithm == "oracle") {
    PlanDoc doc;
    if (algorithm == "offline") {
      const OfflinePlan plan = plan_offline(inst, epsilon);
      doc = make_plan_doc(inst, plan, "offline");
      const double dt = seconds_since(t0);
      std::ostringstream os;
      write_plan(os, doc);
      write_file(out, os.str());
      std::cout << "algorithm=offline n=" << inst.n() << " epsilon=" << fmt_g17(epsilon)
                << " length=" << fmt_fixed(plan.tour.length, 6) << " lb=" << fmt_fixed(plan.lb, 6)
                << " ratio_lb=" << fmt_fixed(plan.tour.length / plan.lb, 6)
                << " ratio_bound=" << fmt_fixed(plan.ratio_bound, 6)
                << " runtime_s=" << fmt_fixed(dt, 6) << "\n";
    } else {
      const Tour tour = exact_optimum(inst, epsilon, caps);
      doc.algorithm = "oracle";
      doc.instance_hash = instance_hash(inst);
      doc.epsilon = epsilon;
      doc.length = tour.length;
      doc.waypoints = tour.waypoints;
      const double dt = seconds_since(t0);
      std::ostringstream os;
      write_plan(os, doc);
      write_file(out, os.str());
      std::cout << "algorithm=oracle n=" << inst.n() << " epsilon=" << fmt_g17(epsilon)
                << " length=" << fmt_fixed(tour.length, 6) << " runtime_s=" << fmt_fixed(dt, 6)
                << "\n";
    }
    return 0;
  }
  OnlineSim sim(inst, epsilon);
  const SimResult res = algorithm == "nof"  ? sim.run_nof()
                        : algorithm == "ci" ? sim.run_ci()
                                            : sim.run_batsp();
  const double dt = seconds_since(t0);
  const TraceDoc doc = make_trace_doc(inst, res, algorithm, epsilon);
  std::ostringstream os;
  write_trace(os, doc);
  write_file(out, os.str());
  std::cout << "algorithm=" << algorithm << " n=" << inst.n() << " epsilon=" << fmt_g17(epsilon)
            << " length=" << fmt_fixed(res.length, 6) << " steps=" << res.steps
            << " complete=" << (res.complete ? 1 : 0) << " runtime_s=" << fmt_fixed(dt, 6)
            << "\n";
  return 0;
}

int cmd_render(const std::string& instance_path, const std::string& in_path,
               const std::string& out) {
  const Instance inst = load_instance(instance_path);
  std::ifstream in(in_path);
  if (!in) throw DomainError("cannot open input file " + in_path);
  std::string first;
  std::getline(in, first);
  in.seekg(0);
  std::ostringstream os;
  if (first == "coverplan-plan v1") {
    const PlanDoc doc = read_plan(in);
    render_svg(os, inst, doc.waypoints, /*close_route=*/true, doc.waypoints);
  } else if (first == "coverplan-trace v1") {
    const TraceDoc doc = read_trace(in);
    std::vector<Point2D> dots;
    dots.reserve(doc.events.size());
    for (const CoverEvent& e : doc.events)
      if (e.step >= 0 && e.step < static_cast<long>(doc.positions.size()))
        dots.push_back(doc.positions[e.step]);
    render_svg(os, inst, doc.positions, /*close_route=*/false, dots);
  } else {
    throw ParseError("unknown document type '" + first + "'", 1);
  }
  write_file(out, os.str());
  std::cout << "svg=" << out << "\n";
  return 0;
}

int cmd_ilp(const std::string& instance_path, double epsilon, const std::string& out,
            const IlpCaps& caps) {
  const Instance inst = load_instance(instance_path);
  std::ostringstream os;
  const IlpCounts counts = ilp_export(inst, epsilon, os, caps);
  write_file(out, os.str());
  std::cout << "model=" << out << " binaries=" << counts.binary_vars
            << " order_vars=" << counts.order_vars
            << " constraints=" << (counts.degree_out + counts.degree_in + counts.flow + counts.mtz)
            << "\n";
  return 0;
}

int cmd_bench(const std::vector<int>& n_list, const std::vector<double>& eps_list, int repeats,
              const std::vector<std::string>& algorithms, std::uint64_t seed_base,
              const std::string& out, const OracleCaps& caps) {
  SuiteConfig cfg;
  cfg.n_list = n_list;
  cfg.epsilon_list = eps_list;
  cfg.repeats = repeats;
  cfg.algorithms = algorithms;
  cfg.seed_base = seed_base;
  cfg.caps = caps;
  const std::vector<MetricsRow> rows = run_suite(cfg);
  std::ostringstream os;
  write_csv(os, rows);
  write_file(out, os.str());
  int failures = 0;
  for (const MetricsRow& r : rows)
    if (r.status != "ok") ++failures;
  std::cout << "csv=" << out << " rows=" << rows.size() << " failures=" << failures << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coverage tour planning over rectangular objects"};
  app.require_subcommand(1);

  GenSpec base;
  OracleCaps oracle_caps;
  IlpCaps ilp_caps;
  std::string caps_spec;

  auto* gen = app.add_subcommand("generate", "generate a random instance");
  int gen_n = 5;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "instance.txt";
  gen->add_option("--n", gen_n, "number of objects");
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output instance file");
  gen->add_option("--map-side", base.map_side, "map side length (m)");
  gen->add_option("--padding", base.padding, "map padding (m)");
  gen->add_option("--d-max", base.d_max, "max observation distance (m)");
  gen->add_option("--d-min", base.d_min, "min observation distance (m)");
  gen->add_option("--perception", base.perception, "perception radius (m)");

  auto* plan = app.add_subcommand("plan", "plan a tour for an instance");
  std::string plan_instance;
  std::string plan_alg = "offline";
  std::string plan_out = "plan.txt";
  double plan_eps = 0.5;
  plan->add_option("--instance", plan_instance, "instance file")->required();
  plan->add_option("--epsilon", plan_eps, "mesh accuracy parameter in (0, 1]");
  plan->add_option("--algorithm", plan_alg, "offline | nof | ci | batsp | oracle")
      ->check(CLI::IsMember({"offline", "nof", "ci", "batsp", "oracle"}));
  plan->add_option("--out", plan_out, "output plan/trace file");
  plan->add_option("--caps", caps_spec, "caps: combinations[,zones[,variables]]");

  auto* render = app.add_subcommand("render", "render a plan or trace to SVG");
  std::string render_instance, render_in, render_out = "out.svg";
  render->add_option("--instance", render_instance, "instance file")->required();
  render->add_option("--in", render_in, "plan or trace file")->required();
  render->add_option("--out", render_out, "output SVG file");

  auto* ilp = app.add_subcommand("ilp", "export the zone-TSP integer model (LP format)");
  std::string ilp_instance, ilp_out = "model.lp";
  double ilp_eps = 0.5;
  ilp->add_option("--instance", ilp_instance, "instance file")->required();
  ilp->add_option("--epsilon", ilp_eps, "mesh accuracy parameter in (0, 1]");
  ilp->add_option("--out", ilp_out, "output LP file");
  ilp->add_option("--caps", caps_spec, "caps: combinations[,zones[,variables]]");

  auto* bench = app.add_subcommand("bench", "run the experiment grid and write a CSV");
  std::vector<int> bench_n = {2, 3, 5, 10};
  std::vector<double> bench_eps = {0.3, 0.5};
  int bench_repeats = 5;
  std::vector<std::string> bench_algorithms = {"offline", "nof", "ci", "batsp"};
  std::uint64_t bench_seed = 1;
  std::string bench_out = "bench.csv";
  bench->add_option("--n", bench_n, "object counts")->delimiter(',');
  bench->add_option("--epsilon", bench_eps, "epsilon values")->delimiter(',');
  bench->add_option("--repeats", bench_repeats, "seeds per cell");
  bench->add_option("--algorithms", bench_algorithms, "offline,nof,ci,batsp,oracle")
      ->delimiter(',');
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--out", bench_out, "output CSV file");
  bench->add_option("--caps", caps_spec, "caps: combinations[,zones[,variables]]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    parse_caps(caps_spec, oracle_caps, ilp_caps);
    if (gen->parsed()) return cmd_generate(gen_n, gen_seed, gen_out, base);
    if (plan->parsed()) return cmd_plan(plan_instance, plan_eps, plan_alg, plan_out, oracle_caps);
    if (render->parsed()) return cmd_render(render_instance, render_in, render_out);
    if (ilp->parsed()) return cmd_ilp(ilp_instance, ilp_eps, ilp_out, ilp_caps);
    if (bench->parsed())
      return cmd_bench(bench_n, bench_eps, bench_repeats, bench_algorithms, bench_seed, bench_out,
                       oracle_caps);
  } catch (const CapsError& e) {
    std::cerr << "caps exceeded: " << e.what() << "\n";
    return kExitCaps;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
