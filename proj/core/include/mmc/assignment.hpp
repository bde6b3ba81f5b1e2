#pragma once

#include <map>
#include <span>

#include "mmc/instance.hpp"

namespace mmc {

// A radius per server. A server without an entry behaves as radius 0 for
// coverage counting; the entries themselves form the solution's support,
// which is what server-budget constraints count.
class RadiusAssignment {
 public:
  RadiusAssignment() = default;

  double radius(int server) const {
    auto it = radii_.find(server);
    return it == radii_.end() ? 0.0 : it->second;
  }
  bool has(int server) const { return radii_.count(server) != 0; }

  void set(int server, double r) {
    if (!(r >= 0.0)) throw_input("radius", "radius must be >= 0");
    radii_[server] = r;
  }
  void raise(int server, double r) {
    if (radius(server) < r || !has(server)) set(server, std::max(radius(server), r));
  }
  void erase(int server) { radii_.erase(server); }
  void clear() { radii_.clear(); }

  const std::map<int, double>& entries() const { return radii_; }
  int support_size() const { return static_cast<int>(radii_.size()); }
  bool empty() const { return radii_.empty(); }

  double cost(double alpha) const;

  // Entries of other must not collide with existing ones; the solvers merge
  // 1-covers over pairwise disjoint server subsets.
  void merge_disjoint(const RadiusAssignment& other);

  bool operator==(const RadiusAssignment& other) const { return radii_ == other.radii_; }

 private:
  std::map<int, double> radii_;
};

// |{y in Y : d(x,y) <= r(y)}| over closed balls, absent entries as radius 0.
int coverage_count(const MetricInstance& inst, const RadiusAssignment& r, int client);

// Coverage restricted to the assignment's support; this is the right count
// when the solution is a subset Y' of servers with radii on exactly Y'.
int support_coverage_count(const MetricInstance& inst, const RadiusAssignment& r, int client);

// Some support entry's ball contains the client.
bool support_covers(const MetricInstance& inst, const RadiusAssignment& r, int client);

// Every client covered at least demand(x) times.
bool is_feasible(const MetricInstance& inst, const DemandProfile& dem, const RadiusAssignment& r);

// sum of radius^alpha over entries; empty assignment costs 0.
double solution_cost(const MetricInstance& inst, const RadiusAssignment& r);

}  // namespace mmc
