#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "coverplan/io.hpp"

using namespace coverplan;

namespace {

std::string cli_path() {
  const char* p = std::getenv("COVERPLAN_CLI");
  return p ? p : "";
}

std::string work_dir() {
  const char* p = std::getenv("COVERPLAN_TEST_DIR");
  return p ? p : ".";
}

int run(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli end-to-end") {
  if (cli_path().empty()) {
    SKIP("COVERPLAN_CLI not set");
  }
  const std::string dir = work_dir();
  const std::string inst = dir + "/cli_instance.txt";
  const std::string inst2 = dir + "/cli_instance2.txt";
  const std::string plan = dir + "/cli_plan.txt";
  const std::string trace = dir + "/cli_trace.txt";
  const std::string svg1 = dir + "/cli_plan.svg";
  const std::string svg2 = dir + "/cli_plan2.svg";
  const std::string model = dir + "/cli_model.lp";

  SECTION("generate is deterministic and round-trips") {
    REQUIRE(run("generate --n 5 --seed 7 --out " + inst) == 0);
    REQUIRE(run("generate --n 5 --seed 7 --out " + inst2) == 0);
    CHECK(slurp(inst) == slurp(inst2));
    std::ifstream in(inst);
    const Instance parsed = read_instance(in);
    CHECK(parsed.n() == 5);
  }

  SECTION("usage and domain errors map to distinct exit codes") {
    CHECK(run("generate --n 1 --out " + inst) == 3);           // InstanceTooSmall
    CHECK(run("plan --bogus-flag 1") == 2);                    // usage
    CHECK(run("plan --instance " + inst + " --algorithm nope") == 2);
    CHECK(run("nonexistent-command") == 2);
  }

  SECTION("plan offline, render, ilp") {
    REQUIRE(run("generate --n 2 --seed 9 --out " + inst) == 0);
    REQUIRE(run("plan --instance " + inst + " --epsilon 0.5 --algorithm offline --out " + plan) ==
            0);
    std::ifstream pin(plan);
    const PlanDoc doc = read_plan(pin);
    CHECK(doc.algorithm == "offline");
    CHECK(doc.length / doc.lb <= 9.0 + 1e-9);
    REQUIRE(doc.waypoints.size() >= 2);

    REQUIRE(run("render --instance " + inst + " --in " + plan + " --out " + svg1) == 0);
    REQUIRE(run("render --instance " + inst + " --in " + plan + " --out " + svg2) == 0);
    CHECK(slurp(svg1) == slurp(svg2));
    CHECK(slurp(svg1).find("<polyline") != std::string::npos);

    REQUIRE(run("ilp --instance " + inst + " --epsilon 0.5 --out " + model) == 0);
    CHECK(slurp(model).rfind("\\ coverage tour", 0) == 0);
    // tiny caps push the export over the limit -> caps exit code
    CHECK(run("ilp --instance " + inst + " --epsilon 0.5 --caps 100000,13,10 --out " + model) ==
          4);
  }

  SECTION("online plans write traces") {
    REQUIRE(run("generate --n 3 --seed 4 --out " + inst) == 0);
    REQUIRE(run("plan --instance " + inst + " --epsilon 0.5 --algorithm nof --out " + trace) ==
            0);
    std::ifstream tin(trace);
    const TraceDoc doc = read_trace(tin);
    CHECK(doc.algorithm == "nof");
    CHECK(doc.complete);
    REQUIRE(run("render --instance " + inst + " --in " + trace + " --out " + svg1) == 0);
  }
}
