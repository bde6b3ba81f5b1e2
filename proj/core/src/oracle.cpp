#include "mmc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mmc/neighborhood.hpp"

namespace mmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// One selectable radius for a server, with the clients its ball contains.
struct Choice {
  double radius = 0.0;
  double cost = 0.0;
  bool open = true;
  std::vector<int> covers;
};

struct Enumeration {
  std::vector<std::vector<Choice>> choices;  // per server
  long long worst_case = 1;                  // saturating product of choice counts
};

Enumeration enumerate_choices(const MetricInstance& inst, bool support_mode) {
  Enumeration out;
  const double alpha = inst.alpha();
  out.choices.resize(inst.num_servers());
  for (int s = 0; s < inst.num_servers(); ++s) {
    auto& list = out.choices[s];
    if (support_mode) list.push_back({0.0, 0.0, false, {}});
    std::set<double> radii;
    bool colocated = false;
    for (int c = 0; c < inst.num_clients(); ++c) {
      double d = inst.dist_cs(c, s);
      radii.insert(d);
      if (d == 0.0) colocated = true;
    }
    if (!support_mode)
      radii.insert(0.0);  // radius 0 and "closed" coincide when coverage counts every server
    else if (!colocated)
      radii.erase(0.0);   // an open radius-0 ball with no co-located client is dominated
    for (double r : radii) {
      Choice ch{r, std::pow(r, alpha), true, {}};
      for (int c = 0; c < inst.num_clients(); ++c)
        if (inst.dist_cs(c, s) <= r) ch.covers.push_back(c);
      list.push_back(std::move(ch));
    }
    if (out.worst_case <= std::numeric_limits<long long>::max() / static_cast<long long>(list.size()))
      out.worst_case *= static_cast<long long>(list.size());
    else
      out.worst_case = std::numeric_limits<long long>::max();
  }
  return out;
}

struct Search {
  const MetricInstance& inst;
  const Enumeration& en;
  std::vector<int> need;       // residual demand per client
  int open_budget;             // INT_MAX when unconstrained
  bool support_mode;
  long long nodes = 0;

  double best_cost = kInf;
  std::vector<const Choice*> best;
  std::vector<const Choice*> current;

  Search(const MetricInstance& i, const Enumeration& e, std::vector<int> demand, int budget,
         bool support)
      : inst(i), en(e), need(std::move(demand)), open_budget(budget), support_mode(support) {
    current.resize(en.choices.size());
  }

  bool residual_ok(int next_server, int open_used) const {
    const int remaining = static_cast<int>(en.choices.size()) - next_server;
    int usable = support_mode ? std::min(remaining, open_budget - open_used) : remaining;
    for (int n : need)
      if (n > usable) return false;
    return true;
  }

  void dfs(int i, int open_used, double cost) {
    ++nodes;
    if (cost >= best_cost) return;
    if (!residual_ok(i, open_used)) return;
    const int m = static_cast<int>(en.choices.size());
    if (std::all_of(need.begin(), need.end(), [](int n) { return n <= 0; })) {
      for (int j = i; j < m; ++j) current[j] = &en.choices[j].front();
      best_cost = cost;
      best = current;
      return;
    }
    if (i == m) return;
    for (const auto& ch : en.choices[i]) {
      if (ch.open && open_used >= open_budget) continue;
      current[i] = &ch;
      for (int c : ch.covers) --need[c];
      dfs(i + 1, open_used + (ch.open ? 1 : 0), cost + ch.cost);
      for (int c : ch.covers) ++need[c];
    }
  }
};

// Cheap feasible starting point so the search opens with a real upper bound.
double incumbent_mmc(const MetricInstance& inst, const DemandProfile& dem) {
  auto idx = build_neighborhood_index(inst);
  RadiusAssignment r;
  for (int c = 0; c < inst.num_clients(); ++c)
    for (int j = 1; j <= dem.demand(c); ++j)
      r.raise(idx.nth(c, j), idx.nbr_radius(c, j));
  return r.cost(inst.alpha());
}

double incumbent_tmmc(const MetricInstance& inst, int k) {
  double total = 0.0;
  for (int s = 0; s < k; ++s) {
    double farthest = 0.0;
    for (int c = 0; c < inst.num_clients(); ++c)
      farthest = std::max(farthest, inst.dist_cs(c, s));
    total += std::pow(farthest, inst.alpha());
  }
  return total;
}

OracleResult run(const MetricInstance& inst, const Enumeration& en, std::vector<int> demand,
                 int budget, bool support_mode, double upper, const OracleGuard& guard) {
  if (en.worst_case > guard.max_nodes)
    throw_input("guard", "oracle refused: worst-case enumeration " +
                             std::to_string(en.worst_case) + " exceeds the node guard " +
                             std::to_string(guard.max_nodes));
  Search search(inst, en, std::move(demand), budget, support_mode);
  search.best_cost = std::nextafter(upper, kInf);  // known-feasible cost must stay admissible
  search.dfs(0, 0, 0.0);
  if (search.best.empty()) throw_infeasible("oracle found no feasible assignment");

  OracleResult out;
  out.cost = 0.0;
  for (size_t s = 0; s < search.best.size(); ++s) {
    const Choice& ch = *search.best[s];
    out.cost += ch.cost;
    if (support_mode ? ch.open : ch.radius > 0.0) out.assignment.set(static_cast<int>(s), ch.radius);
  }
  out.nodes = search.nodes;
  out.near_guard = en.worst_case >= guard.max_nodes / 2;
  return out;
}

}  // namespace

OracleResult exact_mmc(const MetricInstance& inst, const DemandProfile& dem,
                       const OracleGuard& guard) {
  dem.validate(inst);
  auto en = enumerate_choices(inst, /*support_mode=*/false);
  return run(inst, en, dem.demands(), std::numeric_limits<int>::max(), false,
             incumbent_mmc(inst, dem), guard);
}

OracleResult exact_tmmc(const MetricInstance& inst, int k, int t, const OracleGuard& guard) {
  if (k < 1 || k > inst.num_servers())
    throw_infeasible("coverage demand " + std::to_string(k) + " outside [1, |Y|]");
  if (t < k) throw_infeasible("server budget below coverage demand");
  auto en = enumerate_choices(inst, /*support_mode=*/true);
  std::vector<int> demand(static_cast<size_t>(inst.num_clients()), k);
  return run(inst, en, std::move(demand), t, true, incumbent_tmmc(inst, k), guard);
}

}  // namespace mmc
