#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmc/instance.hpp"
#include "mmc/oracle.hpp"
#include "mmc/outer_cover.hpp"
#include "mmc/solvers.hpp"

namespace mmc {

struct LoadedInstance {
  MetricInstance instance;
  DemandProfile demands;
  std::optional<int> t;
  bool demands_scalar = false;  // how the file spelled a uniform demand
};

// Instance files are JSON objects with alpha, client/server name lists, a
// metric (euclidean coords, a full distance matrix, or a weighted edge list
// closed under shortest paths on load), demands (one int or one per client),
// and an optional server budget t. Schema, metric and demand problems raise
// input errors with distinct codes ("schema", "metric", "demand").
LoadedInstance parse_instance(const std::string& json_text);
LoadedInstance load_instance(const std::string& path);
std::string serialize_instance(const LoadedInstance& li);
void save_instance(const std::string& path, const LoadedInstance& li);

enum class SolveMode { Uniform, Nonuniform, Tmmc };

SolveMode parse_mode(const std::string& name);
const char* to_string(SolveMode mode);

// Solved-instance files carry the mode, the demand actually solved, the radii
// by server name, and the reported cost, plus the breakdown for inspection.
std::string serialize_solution(const MetricInstance& inst, const SolveReport& report,
                               SolveMode mode);

struct ParsedSolution {
  SolveMode mode = SolveMode::Uniform;
  int k = 0;
  std::optional<int> t;
  double cost = 0.0;
  RadiusAssignment assignment;
};

ParsedSolution parse_solution(const MetricInstance& inst, const std::string& json_text);

struct VerifyOutcome {
  bool feasible = false;
  bool cost_matches = false;
  double recomputed_cost = 0.0;
  std::string detail;
};

// Re-checks a solution file against its instance: coverage per the recorded
// mode (support-restricted counting and the budget for tmmc) and the stated
// cost against a recomputation at 1e-9 relative tolerance.
VerifyOutcome verify_solution(const MetricInstance& inst, const DemandProfile& dem,
                              const ParsedSolution& sol);

std::string serialize_oracle_result(const MetricInstance& inst, const OracleResult& res,
                                    SolveMode mode);

// Debug dumps: intersection graphs + nets + family, and the per-decision audit.
std::string dump_structures(const MetricInstance& inst, const PartitionResult& part);
std::string dump_audit(const MetricInstance& inst, const PartitionLog& log,
                       const AuditVerdict& verdict);
std::string dump_bundle(const MetricInstance& inst, const OuterCoverBundle& bundle);

// Seeded experiment generation. (config, seed, trial index) fully determines
// every instance byte.
struct ExperimentConfig {
  int trials = 0;
  std::uint64_t seed = 0;
  std::array<int, 2> clients{1, 6};
  std::array<int, 2> servers{2, 8};
  std::array<int, 2> demand{1, 4};
  std::vector<double> alphas{1.0};
  std::string metric = "euclidean2d";  // euclidean2d | graph
  std::vector<std::string> modes{"uniform"};
  std::vector<std::string> subroutines{"exact"};
  long long oracle_guard = 10'000'000;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& cfg);

struct GeneratedInstance {
  std::string content;
  bool demand_clamped = false;  // requested demand range exceeded |Y|
};

GeneratedInstance generate_instance(const ExperimentConfig& cfg, int trial_index);

std::string content_digest(const std::string& content);  // FNV-1a 64, hex

struct TrialRow {
  int trial = 0;
  std::string digest;
  std::string mode;
  std::string subroutine;
  double alpha = 1.0;
  int num_clients = 0;
  int num_servers = 0;
  int k = 0;
  std::optional<int> t;
  double solver_cost = 0.0;
  double oracle_cost = 0.0;
  double ratio = 1.0;
  double bound = 0.0;
  bool invariants_ok = true;
  double solve_ms = 0.0;
  double oracle_ms = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TrialRow> rows;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;

  // Timing columns are the one non-deterministic part of a report; strip them
  // to compare two runs of the same config byte for byte.
  std::string to_json(bool include_timings = true) const;
  std::string to_csv(bool include_timings = true) const;
};

// Solves every trial under every configured mode and subroutine, runs the
// oracle, and certifies the structural invariants (family structure and
// hitting properties, outer-cover extraction bounds, hosting bounds, ratio
// ceilings). Any invariant failure dumps the offending instance to
// `failure_dir` (when set) and aborts with an invariant violation.
ExperimentReport run_experiment(const ExperimentConfig& cfg,
                                const std::string& failure_dir = "");

// Published approximation-ratio ceilings per mode for exponent alpha.
double ratio_bound(SolveMode mode, double alpha);

}  // namespace mmc
