#include "mmc/neighborhood.hpp"

#include <algorithm>
#include <numeric>

namespace mmc {

NeighborhoodIndex::NeighborhoodIndex(const MetricInstance& inst) : inst_(&inst) {
  const int nx = inst.num_clients();
  const int ny = inst.num_servers();
  order_.resize(nx);
  rank_.assign(nx, std::vector<int>(ny, 0));
  for (int c = 0; c < nx; ++c) {
    auto& ord = order_[c];
    ord.resize(ny);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) {
      double da = inst.dist_cs(c, a);
      double db = inst.dist_cs(c, b);
      if (da != db) return da < db;
      return a < b;
    });
    for (int j = 0; j < ny; ++j) rank_[c][ord[j]] = j + 1;
  }
}

bool NeighborhoodIndex::neighborhoods_intersect(int c1, int i1, int c2, int i2) const {
  // Scan the shorter prefix, test membership in the other via ranks.
  if (i1 > i2) {
    std::swap(c1, c2);
    std::swap(i1, i2);
  }
  for (int j = 0; j < i1; ++j)
    if (rank_[c2][order_[c1][j]] <= i2) return true;
  return false;
}

NeighborhoodIndex build_neighborhood_index(const MetricInstance& inst) {
  if (inst.num_servers() < 1) throw_input("schema", "neighborhood index needs at least one server");
  return NeighborhoodIndex(inst);
}

}  // namespace mmc
