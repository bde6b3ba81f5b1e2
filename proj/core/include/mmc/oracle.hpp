#pragma once

#include "mmc/assignment.hpp"
#include "mmc/instance.hpp"

namespace mmc {

struct OracleResult {
  double cost = 0.0;
  RadiusAssignment assignment;
  long long nodes = 0;          // search tree nodes explored
  bool near_guard = false;      // worst-case enumeration was within 2x of the guard
};

struct OracleGuard {
  long long max_nodes = 10'000'000;
};

// Ground-truth optimum by exhaustive search over the per-server candidate
// radii ({0} plus the client distances; optimal covers never need anything
// else, since any ball shrinks onto its farthest covered client for free).
// Branch and bound prunes on partial cost and on residual demand. The guard is
// checked against the worst-case candidate product before any search starts.
// errors: guard exceeded -> input error carrying the count.
OracleResult exact_mmc(const MetricInstance& inst, const DemandProfile& dem,
                       const OracleGuard& guard = {});

// As above with the solution constrained to open at most t servers; a server
// is open iff it has an entry, and only open servers' balls count toward
// coverage (a radius-0 entry covers co-located clients).
// errors: guard; t < k -> infeasible.
OracleResult exact_tmmc(const MetricInstance& inst, int k, int t, const OracleGuard& guard = {});

}  // namespace mmc
