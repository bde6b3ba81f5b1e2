#include "mmc/assignment.hpp"

#include <cmath>

namespace mmc {

double RadiusAssignment::cost(double alpha) const {
  double total = 0.0;
  for (const auto& [server, r] : radii_) total += std::pow(r, alpha);
  return total;
}

void RadiusAssignment::merge_disjoint(const RadiusAssignment& other) {
  for (const auto& [server, r] : other.entries()) {
    if (radii_.count(server))
      throw_invariant("disjoint-merge", "server " + std::to_string(server) +
                                            " assigned a radius by two subset covers");
    radii_[server] = r;
  }
}

int coverage_count(const MetricInstance& inst, const RadiusAssignment& r, int client) {
  inst.check_client(client);
  int count = 0;
  for (int s = 0; s < inst.num_servers(); ++s)
    if (inst.dist_cs(client, s) <= r.radius(s)) ++count;
  return count;
}

int support_coverage_count(const MetricInstance& inst, const RadiusAssignment& r, int client) {
  inst.check_client(client);
  int count = 0;
  for (const auto& [s, radius] : r.entries())
    if (inst.dist_cs(client, s) <= radius) ++count;
  return count;
}

bool support_covers(const MetricInstance& inst, const RadiusAssignment& r, int client) {
  for (const auto& [s, radius] : r.entries())
    if (inst.dist_cs(client, s) <= radius) return true;
  return false;
}

bool is_feasible(const MetricInstance& inst, const DemandProfile& dem, const RadiusAssignment& r) {
  dem.validate(inst);
  for (int c = 0; c < inst.num_clients(); ++c)
    if (coverage_count(inst, r, c) < dem.demand(c)) return false;
  return true;
}

double solution_cost(const MetricInstance& inst, const RadiusAssignment& r) {
  return r.cost(inst.alpha());
}

}  // namespace mmc
