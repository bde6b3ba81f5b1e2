// Command-line front end: solve / oracle / verify / gen / experiment.
// Exit codes: 0 success, 2 input error, 3 infeasible, 4 invariant violation.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mmc/io.hpp"

namespace {

namespace fs = std::filesystem;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) mmc::throw_input("schema", "cannot write file: " + path);
  out << content;
}

int exit_code(const mmc::Error& e) {
  switch (e.kind()) {
    case mmc::ErrorKind::Input: return 2;
    case mmc::ErrorKind::Infeasible: return 3;
    case mmc::ErrorKind::Invariant: return 4;
  }
  return 4;
}

struct SolveArgs {
  std::string input;
  std::string mode = "uniform";
  std::string subroutine = "greedy";
  std::string output;
  std::string audit;
  std::string dump;
  int exact_max_servers = 10;
  int exact_max_clients = 10;
  bool exact_override = false;
};

int cmd_solve(const SolveArgs& args) {
  auto li = mmc::load_instance(args.input);
  const auto& inst = li.instance;
  auto mode = mmc::parse_mode(args.mode);
  auto sub = args.subroutine == "exact" ? mmc::Subroutine::Exact : mmc::Subroutine::Greedy;
  mmc::ExactGuard guard{args.exact_max_servers, args.exact_max_clients, args.exact_override};

  mmc::SolveReport report;
  switch (mode) {
    case mmc::SolveMode::Uniform:
      report = mmc::solve_mmc(inst, li.demands.kmax(), sub, guard);
      break;
    case mmc::SolveMode::Nonuniform:
      report = mmc::solve_nonuniform(inst, li.demands, sub, guard);
      break;
    case mmc::SolveMode::Tmmc:
      if (!li.t) mmc::throw_input("schema", "tmmc mode needs a 't' field in the instance");
      report = mmc::solve_tmmc(inst, li.demands.kmax(), *li.t, sub, guard);
      break;
  }

  std::cout << "solved " << args.input << " mode=" << args.mode << " subroutine=" << args.subroutine
            << " cost=" << report.cost << " servers_used=" << report.assignment.support_size()
            << " wall_ms=" << report.wall_ms << "\n";
  if (!args.output.empty()) write_file(args.output, mmc::serialize_solution(inst, report, mode));
  if (!args.audit.empty()) {
    auto idx = mmc::build_neighborhood_index(inst);
    auto dem = mode == mmc::SolveMode::Nonuniform
                   ? li.demands
                   : mmc::DemandProfile::uniform(report.k, inst.num_clients());
    auto verdict = mmc::audit_availability(report.partition_log, idx, dem);
    write_file(args.audit, mmc::dump_audit(inst, report.partition_log, verdict));
  }
  if (!args.dump.empty()) {
    auto idx = mmc::build_neighborhood_index(inst);
    auto part = mode == mmc::SolveMode::Nonuniform
                    ? mmc::compute_server_subsets_nonuniform(inst, idx, li.demands)
                    : mmc::compute_server_subsets_uniform(inst, idx, report.k);
    write_file(args.dump, mmc::dump_structures(inst, part));
  }
  return 0;
}

int cmd_oracle(const std::string& input, const std::string& mode_name, const std::string& output,
               long long guard_nodes) {
  auto li = mmc::load_instance(input);
  const auto& inst = li.instance;
  auto mode = mmc::parse_mode(mode_name);
  mmc::OracleGuard guard{guard_nodes};

  mmc::OracleResult res;
  switch (mode) {
    case mmc::SolveMode::Uniform:
      res = mmc::exact_mmc(inst, mmc::DemandProfile::uniform(li.demands.kmax(), inst.num_clients()),
                           guard);
      break;
    case mmc::SolveMode::Nonuniform:
      res = mmc::exact_mmc(inst, li.demands, guard);
      break;
    case mmc::SolveMode::Tmmc:
      if (!li.t) mmc::throw_input("schema", "tmmc mode needs a 't' field in the instance");
      res = mmc::exact_tmmc(inst, li.demands.kmax(), *li.t, guard);
      break;
  }
  std::cout << "optimum " << res.cost << " (nodes=" << res.nodes << ")\n";
  if (!output.empty()) write_file(output, mmc::serialize_oracle_result(inst, res, mode));
  return 0;
}

int cmd_verify(const std::string& input, const std::string& solution, const std::string& bundle) {
  auto li = mmc::load_instance(input);
  std::ifstream in(solution, std::ios::binary);
  if (!in) mmc::throw_input("schema", "cannot open file: " + solution);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto sol = mmc::parse_solution(li.instance, text);
  auto outcome = mmc::verify_solution(li.instance, li.demands, sol);
  if (!outcome.feasible) {
    std::cout << "FAIL infeasible: " << outcome.detail << "\n";
    throw mmc::Error(mmc::ErrorKind::Infeasible, "infeasible", outcome.detail);
  }
  if (!outcome.cost_matches) {
    std::cout << "FAIL cost mismatch: stated " << sol.cost << " recomputed "
              << outcome.recomputed_cost << "\n";
    throw mmc::Error(mmc::ErrorKind::Invariant, "cost", outcome.detail);
  }
  if (!bundle.empty()) {
    // peel the verified cover into its disjoint ball rounds and 3x expansions
    auto idx = mmc::build_neighborhood_index(li.instance);
    auto dem = sol.mode == mmc::SolveMode::Nonuniform
                   ? li.demands
                   : mmc::DemandProfile::uniform(sol.k, li.instance.num_clients());
    auto extracted = mmc::extract_outer_covers(li.instance, idx, sol.assignment, dem);
    write_file(bundle, mmc::dump_bundle(li.instance, extracted));
  }
  std::cout << "PASS feasible, cost " << outcome.recomputed_cost << "\n";
  return 0;
}

int cmd_gen(const std::string& config_path, const std::string& output,
            std::optional<long long> seed, std::optional<int> trials) {
  mmc::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = mmc::load_config(config_path);
  if (seed) cfg.seed = static_cast<std::uint64_t>(*seed);
  if (trials) cfg.trials = *trials;
  if (cfg.trials < 1) mmc::throw_input("schema", "gen needs trials >= 1");
  fs::create_directories(output);
  for (int i = 0; i < cfg.trials; ++i) {
    auto generated = mmc::generate_instance(cfg, i);
    char name[32];
    std::snprintf(name, sizeof(name), "instance_%03d.json", i);
    auto path = (fs::path(output) / name).string();
    write_file(path, generated.content);
    std::cout << path << (generated.demand_clamped ? "  (demand range clamped to |Y|)" : "")
              << "\n";
  }
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& report_path) {
  auto cfg = mmc::load_config(config_path);
  auto failure_dir = fs::path(report_path).parent_path().string();
  auto report = mmc::run_experiment(cfg, failure_dir.empty() ? "." : failure_dir);
  write_file(report_path, report.to_json());
  auto csv_path = fs::path(report_path).replace_extension(".csv").string();
  write_file(csv_path, report.to_csv());
  std::cout << "experiment ok: " << report.rows.size() << " rows, max ratio " << report.max_ratio
            << ", mean ratio " << report.mean_ratio << "\n"
            << "report: " << report_path << "\ncsv: " << csv_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metric multi-cover solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "solve an instance file");
  solve->add_option("--input", solve_args.input, "instance JSON")->required();
  solve->add_option("--mode", solve_args.mode, "uniform | nonuniform | tmmc");
  solve->add_option("--subroutine", solve_args.subroutine, "greedy | exact")
      ->check(CLI::IsMember({"greedy", "exact"}));
  solve->add_option("--output", solve_args.output, "solution JSON path");
  solve->add_option("--audit", solve_args.audit, "write the per-decision audit log");
  solve->add_option("--dump", solve_args.dump, "write graphs/nets/family debug JSON");
  solve->add_option("--exact-max-servers", solve_args.exact_max_servers, "exact backend guard");
  solve->add_option("--exact-max-clients", solve_args.exact_max_clients, "exact backend guard");
  solve->add_flag("--exact-override", solve_args.exact_override, "bypass the exact size guard");

  std::string oracle_input, oracle_mode = "uniform", oracle_output;
  long long oracle_nodes = 10'000'000;
  auto* oracle = app.add_subcommand("oracle", "brute-force optimum for a micro-instance");
  oracle->add_option("--input", oracle_input, "instance JSON")->required();
  oracle->add_option("--mode", oracle_mode, "uniform | nonuniform | tmmc");
  oracle->add_option("--output", oracle_output, "result JSON path");
  oracle->add_option("--guard", oracle_nodes, "node guard (default 1e7)");

  std::string verify_input, verify_solution, verify_bundle;
  auto* verify = app.add_subcommand("verify", "re-check a solution file against its instance");
  verify->add_option("--input", verify_input, "instance JSON")->required();
  verify->add_option("--solution", verify_solution, "solution JSON")->required();
  verify->add_option("--bundle", verify_bundle, "dump the solution's outer-cover extraction");

  std::string gen_config, gen_output;
  std::optional<long long> gen_seed;
  std::optional<int> gen_trials;
  auto* gen = app.add_subcommand("gen", "emit seeded random instances");
  gen->add_option("--config", gen_config, "experiment config JSON");
  gen->add_option("--output", gen_output, "output directory")->required();
  gen->add_option("--seed", gen_seed, "override the config seed");
  gen->add_option("--trials", gen_trials, "override the trial count");

  std::string exp_config, exp_report = "report.json";
  auto* experiment = app.add_subcommand("experiment", "run the seeded solve/oracle/verify harness");
  experiment->add_option("--input", exp_config, "experiment config JSON")->required();
  experiment->add_option("--report", exp_report, "report JSON path (CSV lands next to it)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_args);
    if (oracle->parsed()) return cmd_oracle(oracle_input, oracle_mode, oracle_output, oracle_nodes);
    if (verify->parsed()) return cmd_verify(verify_input, verify_solution, verify_bundle);
    if (gen->parsed()) return cmd_gen(gen_config, gen_output, gen_seed, gen_trials);
    if (experiment->parsed()) return cmd_experiment(exp_config, exp_report);
  } catch (const mmc::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
