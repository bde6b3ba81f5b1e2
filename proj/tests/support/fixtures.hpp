#pragma once

#include <limits>
#include <random>
#include <set>
#include <vector>

#include "mmc/assignment.hpp"
#include "mmc/instance.hpp"

namespace fixtures {

// One client at the origin with three co-located servers.
inline mmc::MetricInstance f0(double alpha = 1.0) {
  return mmc::MetricInstance::from_euclidean({"a"}, {"s1", "s2", "s3"},
                                             {{0.0}, {0.0}, {0.0}, {0.0}}, alpha);
}

// Two clients at 0 and 1 on a line, servers co-located with them.
inline mmc::MetricInstance f1(double alpha = 1.0) {
  return mmc::MetricInstance::from_euclidean({"x1", "x2"}, {"y1", "y2"},
                                             {{0.0}, {1.0}, {0.0}, {1.0}}, alpha);
}

// Three collinear clients with servers between and above them.
inline mmc::MetricInstance f2(double alpha = 1.0) {
  return mmc::MetricInstance::from_euclidean(
      {"x1", "x2", "x3"}, {"y1", "y2", "y3", "y4"},
      {{0.0, 0.0}, {4.0, 0.0}, {8.0, 0.0}, {1.0, 0.0}, {4.0, 0.0}, {7.0, 0.0}, {4.0, 3.0}}, alpha);
}

// F1 with demands (2, 1).
inline mmc::DemandProfile f4_demands() { return mmc::DemandProfile({2, 1}); }

inline mmc::MetricInstance random_euclidean(std::mt19937_64& rng, int nx, int ny,
                                            double alpha = 1.0, int dim = 2) {
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<std::string> clients, servers;
  std::vector<std::vector<double>> coords;
  for (int c = 0; c < nx; ++c) clients.push_back("x" + std::to_string(c));
  for (int s = 0; s < ny; ++s) servers.push_back("y" + std::to_string(s));
  for (int p = 0; p < nx + ny; ++p) {
    std::vector<double> point;
    for (int d = 0; d < dim; ++d) point.push_back(coord(rng));
    coords.push_back(std::move(point));
  }
  return mmc::MetricInstance::from_euclidean(std::move(clients), std::move(servers),
                                             std::move(coords), alpha);
}

inline mmc::DemandProfile random_demands(std::mt19937_64& rng, const mmc::MetricInstance& inst,
                                         int lo, int hi) {
  hi = std::min(hi, inst.num_servers());
  lo = std::min(lo, hi);
  std::uniform_int_distribution<int> draw(lo, hi);
  std::vector<int> demands;
  for (int c = 0; c < inst.num_clients(); ++c) demands.push_back(draw(rng));
  return mmc::DemandProfile(std::move(demands));
}

// Pruning-free ground truth: full enumeration over the per-server candidate
// radii ({0} plus all client distances), keeping the first optimum found in
// lexicographic order. Deliberately shares no code with the library's search.
namespace detail {

inline void naive_mmc_rec(const mmc::MetricInstance& inst,
                          const std::vector<std::vector<double>>& cands, size_t server,
                          mmc::RadiusAssignment& current, double cost,
                          const std::vector<int>& demand, double& best_cost,
                          mmc::RadiusAssignment& best) {
  if (server == cands.size()) {
    for (int c = 0; c < inst.num_clients(); ++c) {
      int covered = 0;
      for (int s = 0; s < inst.num_servers(); ++s)
        if (inst.dist_cs(c, s) <= current.radius(s)) ++covered;
      if (covered < demand[c]) return;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = current;
    }
    return;
  }
  for (double r : cands[server]) {
    if (r > 0.0)
      current.set(static_cast<int>(server), r);
    else
      current.erase(static_cast<int>(server));
    naive_mmc_rec(inst, cands, server + 1, current, cost + std::pow(r, inst.alpha()), demand,
                  best_cost, best);
  }
  current.erase(static_cast<int>(server));
}

inline void naive_tmmc_rec(const mmc::MetricInstance& inst,
                           const std::vector<std::vector<double>>& cands, size_t server,
                           std::vector<int>& open_radius_index, double cost, int open, int k, int t,
                           double& best_cost, mmc::RadiusAssignment& best) {
  if (server == cands.size()) {
    if (open > t) return;
    for (int c = 0; c < inst.num_clients(); ++c) {
      int covered = 0;
      for (size_t s = 0; s < cands.size(); ++s)
        if (open_radius_index[s] >= 0 &&
            inst.dist_cs(c, static_cast<int>(s)) <= cands[s][open_radius_index[s]])
          ++covered;
      if (covered < k) return;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best.clear();
      for (size_t s = 0; s < cands.size(); ++s)
        if (open_radius_index[s] >= 0)
          best.set(static_cast<int>(s), cands[s][open_radius_index[s]]);
    }
    return;
  }
  open_radius_index[server] = -1;  // closed
  naive_tmmc_rec(inst, cands, server + 1, open_radius_index, cost, open, k, t, best_cost, best);
  for (size_t j = 0; j < cands[server].size(); ++j) {
    open_radius_index[server] = static_cast<int>(j);
    naive_tmmc_rec(inst, cands, server + 1, open_radius_index, cost + std::pow(cands[server][j], inst.alpha()),
                   open + 1, k, t, best_cost, best);
  }
  open_radius_index[server] = -1;
}

inline std::vector<std::vector<double>> candidate_radii(const mmc::MetricInstance& inst,
                                                        bool keep_zero_only_if_colocated) {
  std::vector<std::vector<double>> cands(inst.num_servers());
  for (int s = 0; s < inst.num_servers(); ++s) {
    std::set<double> radii;
    bool colocated = false;
    for (int c = 0; c < inst.num_clients(); ++c) {
      radii.insert(inst.dist_cs(c, s));
      if (inst.dist_cs(c, s) == 0.0) colocated = true;
    }
    if (keep_zero_only_if_colocated && !colocated)
      radii.erase(0.0);
    else
      radii.insert(0.0);
    cands[s].assign(radii.begin(), radii.end());
  }
  return cands;
}

}  // namespace detail

inline double naive_exact_mmc(const mmc::MetricInstance& inst, const mmc::DemandProfile& dem,
                              mmc::RadiusAssignment* assignment = nullptr) {
  auto cands = detail::candidate_radii(inst, false);
  double best_cost = std::numeric_limits<double>::infinity();
  mmc::RadiusAssignment best, current;
  detail::naive_mmc_rec(inst, cands, 0, current, 0.0, dem.demands(), best_cost, best);
  if (assignment) *assignment = best;
  return best_cost;
}

inline double naive_exact_tmmc(const mmc::MetricInstance& inst, int k, int t,
                               mmc::RadiusAssignment* assignment = nullptr) {
  auto cands = detail::candidate_radii(inst, true);
  double best_cost = std::numeric_limits<double>::infinity();
  mmc::RadiusAssignment best;
  std::vector<int> open_radius_index(static_cast<size_t>(inst.num_servers()), -1);
  detail::naive_tmmc_rec(inst, cands, 0, open_radius_index, 0.0, 0, k, t, best_cost, best);
  if (assignment) *assignment = best;
  return best_cost;
}

}  // namespace fixtures
