#pragma once

#include <span>
#include <vector>

#include "mmc/instance.hpp"

namespace mmc {

// For each client, every server sorted by (distance ascending, server index
// ascending). The fixed tie-break makes every downstream choice reproducible.
// Levels j are 1-based throughout: nth(x, 1) is the nearest server.
class NeighborhoodIndex {
 public:
  explicit NeighborhoodIndex(const MetricInstance& inst);

  const MetricInstance& instance() const { return *inst_; }
  int num_servers() const { return static_cast<int>(order_.front().size()); }

  std::span<const int> order(int client) const { return order_[client]; }

  // j-th closest server, 1 <= j <= |Y|.
  int nth(int client, int j) const { return order_[client][j - 1]; }

  // The i nearest servers N(x, i), as a prefix of the sorted order.
  std::span<const int> neighborhood(int client, int i) const {
    return std::span<const int>(order_[client]).first(static_cast<size_t>(i));
  }

  // Distance from the client to its i-th nearest server; non-decreasing in i.
  double nbr_radius(int client, int i) const {
    return inst_->dist_cs(client, nth(client, i));
  }

  // 1-based position of a server in the client's sorted order.
  int rank(int client, int server) const { return rank_[client][server]; }

  bool in_neighborhood(int client, int i, int server) const {
    return rank_[client][server] <= i;
  }

  // N(c1, i1) and N(c2, i2) share a server.
  bool neighborhoods_intersect(int c1, int i1, int c2, int i2) const;

 private:
  const MetricInstance* inst_;
  std::vector<std::vector<int>> order_;
  std::vector<std::vector<int>> rank_;
};

// pre: |Y| >= 1.
NeighborhoodIndex build_neighborhood_index(const MetricInstance& inst);

}  // namespace mmc
