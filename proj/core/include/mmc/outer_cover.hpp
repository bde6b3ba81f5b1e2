#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mmc/assignment.hpp"
#include "mmc/graphs.hpp"
#include "mmc/instance.hpp"
#include "mmc/neighborhood.hpp"

namespace mmc {

// A cover whose serving balls are "large": every client x with a positive
// requirement lies in some ball whose radius is at least the distance from x
// to its requirement(x)-th nearest server. A uniform level i is the constant
// requirement i.
struct OuterCover {
  RadiusAssignment rho;
  std::vector<int> requirement;     // per client; 0 imposes nothing
  std::optional<int> uniform_level;
};

OuterCover level_outer_cover(int level, int num_clients, RadiusAssignment rho);
OuterCover kappa_outer_cover(std::vector<int> requirement, RadiusAssignment rho);

struct OuterCoverCheck {
  bool valid = true;
  std::map<int, int> witness;       // obligated client -> lowest serving server
  int offending_client = -1;
  std::string detail;
};

// Confirms both serving conditions for every obligated client and fills the
// witness map; on failure reports the first violating client together with the
// required radius and the best ball available to it.
OuterCoverCheck validate_outer_cover(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                     const OuterCover& oc);

// One peeling round of a feasible multi-cover: the disjointified set of
// largest remaining balls, its 3x expansion (which is an outer cover for the
// round's residual requirement), and the expansion's cost.
struct BundleLevel {
  int peel = 0;                     // 1-based extraction round
  std::optional<int> level;         // uniform label kmax - peel + 1, when demands are uniform
  std::vector<int> requirement;     // residual demand max(0, kappa(x) - (peel-1))
  std::vector<Ball> balls;          // pairwise disjoint, server-point centers
  OuterCover expanded;
  double balls_cost = 0.0;
  double mu_hat = 0.0;              // cost of `expanded`, an upper bound on the optimal outer cover
};

struct OuterCoverBundle {
  std::vector<BundleLevel> levels;  // peel order: residual requirements decreasing

  double total_balls_cost() const;
};

// Top-down peeling of a feasible cover: each round every still-obligated
// client nominates the largest remaining ball containing it, the nominations
// are disjointified greedily by descending radius (ties to the lower server
// index), and the chosen balls leave the pool. The disjoint rounds partition a
// subset of the original balls, so their costs sum to at most cost(r).
// pre: r satisfies dem. errors: infeasible r -> input error.
OuterCoverBundle extract_outer_covers(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                      const RadiusAssignment& r, const DemandProfile& dem);

// Uniform convenience: dem == k for every client.
OuterCoverBundle extract_outer_covers(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                      const RadiusAssignment& r, int k);

// Rebuilds an outer cover on the support of a 1-cover r1: walk r1's balls in
// server order, group the not-yet-claimed serving balls of oc that share a
// covered client with the current r1 ball, and emit one ball at the r1 center
// with 3x the group's largest radius. The output uses at most |support(r1)|
// servers, still validates for oc's requirement, and costs at most
// 3^alpha (cost(oc) + cost(r1)).
OuterCover bound_outer_cover_servers(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                     const OuterCover& oc, const RadiusAssignment& r1);

// Relocates an outer cover onto a designated server subset: expand every
// serving ball by `expansion`, move each expanded ball that reaches a subset
// server onto the lowest-index such server, double the radius, and keep the
// largest ball per center. When the subset hits (within hop_bound hops of
// `graph`) the relevant neighborhoods, the result 1-covers `targets` using
// only subset servers at cost <= (2*expansion)^alpha * cost(oc).
// errors: a target left uncovered -> invariant violation naming the client.
RadiusAssignment host_outer_cover(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                  const OuterCover& oc, const std::vector<int>& subset,
                                  const std::vector<int>& targets, int hop_bound, int expansion,
                                  const IntersectionGraph& graph);

}  // namespace mmc
