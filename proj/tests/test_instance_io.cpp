#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmc/io.hpp"

using namespace mmc;

namespace {

const char* kF1 = R"({
  "alpha": 1.0,
  "clients": ["x1", "x2"],
  "servers": ["y1", "y2"],
  "metric": {"type": "euclidean", "coords": {"x1": [0.0], "x2": [1.0], "y1": [0.0], "y2": [1.0]}},
  "demands": 2,
  "t": 2
})";

std::string error_code(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("instances round-trip bit-identically through save/load") {
  auto li = parse_instance(kF1);
  CHECK(li.instance.num_clients() == 2);
  CHECK(li.demands.kmax() == 2);
  CHECK(li.t == 2);

  auto once = serialize_instance(li);
  auto twice = serialize_instance(parse_instance(once));
  CHECK(once == twice);

  auto reloaded = parse_instance(once);
  for (int p = 0; p < li.instance.num_points(); ++p)
    for (int q = 0; q < li.instance.num_points(); ++q)
      CHECK(li.instance.dist(p, q) == reloaded.instance.dist(p, q));
  CHECK(reloaded.demands.demands() == li.demands.demands());
}

TEST_CASE("matrix and graph instances load and validate") {
  const char* matrix = R"({
    "alpha": 2.0,
    "clients": ["a"],
    "servers": ["s"],
    "metric": {"type": "matrix", "d": [[0.0, 1.5], [1.5, 0.0]]},
    "demands": 1
  })";
  auto mi = parse_instance(matrix);
  CHECK(mi.instance.dist_cs(0, 0) == 1.5);
  CHECK(serialize_instance(parse_instance(serialize_instance(mi))) == serialize_instance(mi));

  const char* graph = R"({
    "alpha": 1.0,
    "clients": ["a", "b"],
    "servers": ["s"],
    "metric": {"type": "graph", "edges": [["a", "s", 1.0], ["s", "b", 2.0]]},
    "demands": 1
  })";
  auto gi = parse_instance(graph);
  CHECK(gi.instance.dist_cc(0, 1) == 3.0);  // closed under shortest paths
  CHECK(serialize_instance(parse_instance(serialize_instance(gi))) == serialize_instance(gi));
}

TEST_CASE("load errors carry distinct codes") {
  CHECK(error_code([] { parse_instance("{nope"); }) == "schema");
  CHECK(error_code([] {
          parse_instance(R"({"alpha": 1.0, "clients": ["a"], "servers": ["s"],
            "metric": {"type": "warp", "d": []}, "demands": 1})");
        }) == "schema");
  CHECK(error_code([] {
          parse_instance(R"({"alpha": 1.0, "clients": ["a"], "servers": ["s"],
            "metric": {"type": "matrix", "d": [[0.0, 1.0], [2.0, 0.0]]}, "demands": 1})");
        }) == "metric");
  CHECK(error_code([] {
          parse_instance(R"({"alpha": 1.0, "clients": ["a"], "servers": ["s"],
            "metric": {"type": "matrix", "d": [[0.0, 1.0], [1.0, 0.0]]}, "demands": 2})");
        }) == "demand");
  CHECK(error_code([] {
          parse_instance(R"({"alpha": 1.0, "clients": ["a", "b"], "servers": ["s"],
            "metric": {"type": "graph", "edges": [["a", "s", 1.0]]}, "demands": 1})");
        }) == "metric");  // disconnected
}

TEST_CASE("solutions serialize, parse and verify end to end") {
  auto li = parse_instance(kF1);
  auto report = solve_mmc(li.instance, 2, Subroutine::Exact);
  auto text = serialize_solution(li.instance, report, SolveMode::Uniform);
  auto sol = parse_solution(li.instance, text);
  CHECK(sol.k == 2);
  CHECK(sol.assignment == report.assignment);

  auto outcome = verify_solution(li.instance, li.demands, sol);
  CHECK(outcome.feasible);
  CHECK(outcome.cost_matches);

  auto tampered = sol;
  tampered.cost += 0.5;
  auto bad_cost = verify_solution(li.instance, li.demands, tampered);
  CHECK(bad_cost.feasible);
  CHECK_FALSE(bad_cost.cost_matches);

  auto skimpy = sol;
  skimpy.assignment.set(0, 0.0);
  skimpy.assignment.set(1, 0.0);
  skimpy.cost = 0.0;
  CHECK_FALSE(verify_solution(li.instance, li.demands, skimpy).feasible);
}

TEST_CASE("tmmc verification counts open servers only") {
  auto li = parse_instance(kF1);
  auto report = solve_tmmc(li.instance, 2, 2, Subroutine::Exact);
  auto sol = parse_solution(li.instance, serialize_solution(li.instance, report, SolveMode::Tmmc));
  REQUIRE(sol.t.has_value());
  CHECK(verify_solution(li.instance, li.demands, sol).feasible);

  auto overdrawn = sol;
  overdrawn.t = 1;
  CHECK_FALSE(verify_solution(li.instance, li.demands, overdrawn).feasible);
}

TEST_CASE("generation is deterministic and clamps demands to the server count") {
  ExperimentConfig cfg;
  cfg.trials = 3;
  cfg.seed = 42;
  cfg.clients = {2, 5};
  cfg.servers = {1, 2};
  cfg.demand = {3, 4};  // exceeds |Y|, must clamp
  auto a = generate_instance(cfg, 1);
  auto b = generate_instance(cfg, 1);
  CHECK(a.content == b.content);
  CHECK(a.demand_clamped);
  CHECK(generate_instance(cfg, 2).content != a.content);
  auto li = parse_instance(a.content);
  CHECK(li.demands.kmax() <= li.instance.num_servers());
}

TEST_CASE("graph-mode generation always yields a valid metric") {
  ExperimentConfig cfg;
  cfg.metric = "graph";
  cfg.clients = {1, 5};
  cfg.servers = {1, 5};
  for (int seed = 0; seed < 200; ++seed) {
    cfg.seed = static_cast<std::uint64_t>(seed);
    // from_graph validates the closure exactly; a throw fails the test
    CHECK_NOTHROW(parse_instance(generate_instance(cfg, 0).content));
  }
}

TEST_CASE("zero-trial experiments succeed with an empty report") {
  ExperimentConfig cfg;
  cfg.trials = 0;
  auto report = run_experiment(cfg);
  CHECK(report.rows.empty());
  CHECK(report.max_ratio == 0.0);
}

TEST_CASE("experiments run, stay within bounds, and are reproducible") {
  ExperimentConfig cfg;
  cfg.trials = 20;
  cfg.seed = 7;
  cfg.clients = {1, 6};
  cfg.servers = {2, 8};
  cfg.demand = {1, 4};
  cfg.alphas = {1.0, 2.0};
  cfg.modes = {"uniform", "nonuniform", "tmmc"};
  cfg.subroutines = {"exact", "greedy"};

  auto report = run_experiment(cfg);
  CHECK(report.rows.size() == 20u * 3u * 2u);
  for (const auto& row : report.rows) {
    CHECK(row.invariants_ok);
    CHECK(row.ratio <= row.bound * (1.0 + 1e-9));
    CHECK(row.solver_cost >= row.oracle_cost * (1.0 - 1e-9));
  }

  auto again = run_experiment(cfg);
  CHECK(report.to_json(false) == again.to_json(false));
  CHECK(report.to_csv(false) == again.to_csv(false));

  // csv layout: header plus one line per row
  auto csv = report.to_csv();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(report.rows.size()) + 1);
}

TEST_CASE("graph metrics run through the whole harness") {
  ExperimentConfig cfg;
  cfg.trials = 8;
  cfg.seed = 19;
  cfg.metric = "graph";
  cfg.clients = {1, 4};
  cfg.servers = {2, 5};
  cfg.demand = {1, 3};
  cfg.modes = {"uniform", "nonuniform", "tmmc"};
  cfg.subroutines = {"exact"};
  auto report = run_experiment(cfg);
  CHECK(report.rows.size() == 8u * 3u);
  for (const auto& row : report.rows) {
    CHECK(row.invariants_ok);
    CHECK(row.ratio <= row.bound * (1.0 + 1e-9));
  }
}

TEST_CASE("oversized oracle configurations are refused before any solving") {
  ExperimentConfig cfg;
  cfg.trials = 1;
  cfg.clients = {10, 10};
  cfg.servers = {12, 12};
  cfg.oracle_guard = 1000;
  CHECK(error_code([&] { run_experiment(cfg); }) == "guard");
}

TEST_CASE("config parsing validates fields") {
  CHECK(error_code([] { parse_config(R"({"metric": "hyperbolic"})"); }) == "schema");
  CHECK(error_code([] { parse_config(R"({"clients": [3, 1]})"); }) == "schema");
  CHECK(error_code([] { parse_config(R"({"modes": ["sideways"]})"); }) == "schema");
  auto cfg = parse_config(R"({"trials": 2, "seed": 9, "modes": ["tmmc"]})");
  CHECK(cfg.trials == 2);
  CHECK(cfg.modes == std::vector<std::string>{"tmmc"});
  CHECK(parse_config(serialize_config(cfg)).seed == 9);
}
