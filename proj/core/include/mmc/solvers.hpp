#pragma once

#include <optional>
#include <vector>

#include "mmc/one_cover.hpp"
#include "mmc/partition.hpp"

namespace mmc {

// Budget split chosen by the server-count dynamic program. cost_table[i][b-1]
// is the cheapest 1-cover of X from subset i using at most b servers, already
// run through the prefix-min envelope so it is non-increasing in b.
struct TmmcPlan {
  int budget = 0;
  std::vector<std::vector<double>> cost_table;
  std::vector<int> chosen;  // t_i* per subset, each >= 1, summing to <= budget
};

struct SubCoverInfo {
  int level = 0;
  SubsetKind kind = SubsetKind::Private;
  std::vector<int> servers;
  std::vector<int> clients;
  double cost = 0.0;
  int used = 0;
};

struct SolveReport {
  RadiusAssignment assignment;
  double cost = 0.0;
  int k = 0;
  std::optional<int> t;
  std::vector<SubCoverInfo> breakdown;
  PartitionLog partition_log;
  AuditVerdict audit;
  std::optional<TmmcPlan> plan;
  double wall_ms = 0.0;
};

// k-cover X by computing the disjoint server family and 1-covering X once per
// family member. errors: k > |Y| -> infeasible.
SolveReport solve_mmc(const MetricInstance& inst, int k, Subroutine sub,
                      const ExactGuard& guard = {});

// kappa-cover X: family member at level i covers the clients still demanding
// coverage there ({kappa >= 2i} for shared, {kappa >= 2i-1} for private);
// members whose client set is empty are skipped at zero cost.
SolveReport solve_nonuniform(const MetricInstance& inst, const DemandProfile& dem, Subroutine sub,
                             const ExactGuard& guard = {});

// k-cover X with at most t servers: per-subset budgeted 1-cover cost tables,
// then a knapsack-style split of the budget across the k subsets, ties toward
// smaller per-subset budgets. errors: t < k or k > |Y| -> infeasible.
SolveReport solve_tmmc(const MetricInstance& inst, int k, int t, Subroutine sub,
                       const ExactGuard& guard = {});

}  // namespace mmc
