#include "mmc/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>

namespace mmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<int> all_clients(const MetricInstance& inst) {
  std::vector<int> out(inst.num_clients());
  std::iota(out.begin(), out.end(), 0);
  return out;
}

void apply_cover(const MetricInstance& inst, SolveReport& report, const FamilyEntry& entry,
                 std::vector<int> clients, const RadiusAssignment& piece) {
  report.assignment.merge_disjoint(piece);
  SubCoverInfo info;
  info.level = entry.level;
  info.kind = entry.kind;
  info.servers = entry.servers;
  info.clients = std::move(clients);
  info.cost = piece.cost(inst.alpha());
  info.used = piece.support_size();
  report.breakdown.push_back(std::move(info));
}

void finish(const MetricInstance& inst, SolveReport& report, Clock::time_point start) {
  report.cost = report.assignment.cost(inst.alpha());
  report.wall_ms = ms_since(start);
}

}  // namespace

SolveReport solve_mmc(const MetricInstance& inst, int k, Subroutine sub, const ExactGuard& guard) {
  auto start = Clock::now();
  if (k < 1 || k > inst.num_servers())
    throw_infeasible("coverage demand " + std::to_string(k) + " outside [1, |Y|]");
  auto idx = build_neighborhood_index(inst);
  auto part = compute_server_subsets_uniform(inst, idx, k);

  SolveReport report;
  report.k = k;
  const auto clients = all_clients(inst);
  for (const auto& entry : part.family.entries) {
    OneCoverProblem p{clients, entry.servers, std::nullopt};
    apply_cover(inst, report, entry, clients, cover(inst, p, sub, guard));
  }
  report.partition_log = std::move(part.log);
  report.audit =
      audit_availability(report.partition_log, idx, DemandProfile::uniform(k, inst.num_clients()));

  if (!is_feasible(inst, DemandProfile::uniform(k, inst.num_clients()), report.assignment))
    throw_invariant("solve", "combined assignment is not a k-cover");
  finish(inst, report, start);
  return report;
}

SolveReport solve_nonuniform(const MetricInstance& inst, const DemandProfile& dem, Subroutine sub,
                             const ExactGuard& guard) {
  auto start = Clock::now();
  dem.validate(inst);
  auto idx = build_neighborhood_index(inst);
  auto part = compute_server_subsets_nonuniform(inst, idx, dem);

  SolveReport report;
  report.k = dem.kmax();
  for (const auto& entry : part.family.entries) {
    const int gate = entry.kind == SubsetKind::Shared ? 2 * entry.level : 2 * entry.level - 1;
    std::vector<int> clients;
    for (int c = 0; c < inst.num_clients(); ++c)
      if (dem.demand(c) >= gate) clients.push_back(c);
    if (clients.empty()) continue;
    OneCoverProblem p{clients, entry.servers, std::nullopt};
    apply_cover(inst, report, entry, std::move(clients), cover(inst, p, sub, guard));
  }
  report.partition_log = std::move(part.log);
  report.audit = audit_availability(report.partition_log, idx, dem);

  if (!is_feasible(inst, dem, report.assignment))
    throw_invariant("solve", "combined assignment is not a kappa-cover");
  finish(inst, report, start);
  return report;
}

SolveReport solve_tmmc(const MetricInstance& inst, int k, int t, Subroutine sub,
                       const ExactGuard& guard) {
  auto start = Clock::now();
  if (k < 1 || k > inst.num_servers())
    throw_infeasible("coverage demand " + std::to_string(k) + " outside [1, |Y|]");
  if (t < k) throw_infeasible("server budget " + std::to_string(t) + " below coverage demand " +
                              std::to_string(k));
  auto idx = build_neighborhood_index(inst);
  auto part = compute_server_subsets_uniform(inst, idx, k);
  const auto& subsets = part.family.entries;  // V_1..V_k in emission order
  const auto clients = all_clients(inst);

  // Per-subset budgeted cover table, then prefix-min envelope: allowing fewer
  // servers is always permitted, so costs are made non-increasing in the
  // budget (heuristic backends need not be monotone on their own).
  std::vector<std::vector<double>> table(subsets.size());
  std::vector<std::vector<RadiusAssignment>> pieces(subsets.size());
  for (size_t i = 0; i < subsets.size(); ++i) {
    const int cap = std::min<int>(t, static_cast<int>(subsets[i].servers.size()));
    table[i].resize(cap);
    pieces[i].resize(cap);
    for (int b = 1; b <= cap; ++b) {
      OneCoverProblem p{clients, subsets[i].servers, b};
      pieces[i][b - 1] = cover(inst, p, sub, guard);
      table[i][b - 1] = pieces[i][b - 1].cost(inst.alpha());
      if (b > 1 && table[i][b - 2] < table[i][b - 1]) {
        table[i][b - 1] = table[i][b - 2];
        pieces[i][b - 1] = pieces[i][b - 2];
      }
    }
  }

  // f[i][b]: cheapest way to give subsets 1..i positive budgets summing to <= b.
  const int nk = static_cast<int>(subsets.size());
  std::vector<std::vector<double>> f(nk + 1, std::vector<double>(t + 1, kInf));
  std::vector<std::vector<int>> pick(nk + 1, std::vector<int>(t + 1, 0));
  for (int b = 0; b <= t; ++b) f[0][b] = 0.0;
  for (int i = 1; i <= nk; ++i)
    for (int b = 0; b <= t; ++b) {
      const int cap = static_cast<int>(table[i - 1].size());
      for (int s = 1; s <= std::min(cap, b); ++s) {
        if (f[i - 1][b - s] == kInf) continue;
        double c = table[i - 1][s - 1] + f[i - 1][b - s];
        if (c < f[i][b]) {
          f[i][b] = c;
          pick[i][b] = s;
        }
      }
    }
  if (f[nk][t] == kInf)
    throw_infeasible("no valid budget split across the server subsets");

  SolveReport report;
  report.k = k;
  report.t = t;
  TmmcPlan plan;
  plan.budget = t;
  plan.cost_table = table;
  plan.chosen.resize(nk);
  int b = t;
  for (int i = nk; i >= 1; --i) {
    plan.chosen[i - 1] = pick[i][b];
    b -= pick[i][b];
  }
  for (int i = 0; i < nk; ++i)
    apply_cover(inst, report, subsets[i], clients, pieces[i][plan.chosen[i] - 1]);
  report.plan = std::move(plan);
  report.partition_log = std::move(part.log);
  report.audit =
      audit_availability(report.partition_log, idx, DemandProfile::uniform(k, inst.num_clients()));

  if (report.assignment.support_size() > t)
    throw_invariant("solve", "combined assignment opens more than t servers");
  for (int c = 0; c < inst.num_clients(); ++c)
    if (support_coverage_count(inst, report.assignment, c) < k)
      throw_invariant("solve", "combined assignment is not a k-cover on its support");
  finish(inst, report, start);
  return report;
}

}  // namespace mmc
