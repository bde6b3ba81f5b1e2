#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mmc/assignment.hpp"
#include "mmc/instance.hpp"

namespace mmc {

// 1-cover a client subset X' using only servers from Y', optionally with a
// bound on how many servers may receive an entry.
struct OneCoverProblem {
  std::vector<int> clients;
  std::vector<int> servers;
  std::optional<int> budget;
};

// Size guard for the exact backend; callers opt into larger searches.
struct ExactGuard {
  int max_servers = 10;
  int max_clients = 10;
  bool override_sizes = false;
};

// Per-server discretized candidate radii: the distances to the problem's
// clients plus 0. An optimal cover only ever needs these, because shrinking a
// ball onto its farthest covered client changes neither coverage nor
// feasibility and never raises the cost. Concentric candidates are nested, so
// the coverage masks grow with the radius.
struct CandidateBalls {
  struct PerServer {
    int server = 0;
    std::vector<double> radii;        // distinct, ascending, radii[0] == 0
    std::vector<uint64_t> masks;      // bit per position in `clients`
  };
  std::vector<int> clients;           // ascending
  std::vector<PerServer> servers;     // ascending by server id
  uint64_t full_mask = 0;
};

CandidateBalls build_candidate_balls(const MetricInstance& inst, const OneCoverProblem& p);

// Greedy set cover over the candidate balls by cost-effectiveness
// (radius^alpha per newly covered client), ties to the smaller radius and then
// the smaller server index; per-server concentric picks collapse to the
// largest. Feasible but carries no approximation guarantee.
RadiusAssignment cover_greedy(const MetricInstance& inst, const OneCoverProblem& p);

// Minimum-cost cover by branch and bound over the candidate radii, pruned on
// partial cost against a greedy incumbent and a per-client completion bound.
// Among equal-cost optima the lexicographically smallest radii vector (servers
// ascending, absent as 0) wins. Refuses problems beyond the size guard.
RadiusAssignment cover_exact(const MetricInstance& inst, const OneCoverProblem& p,
                             const ExactGuard& guard = {});

// Budget-constrained variants; "used" means the server has an entry, radius 0
// included. The exact backend runs the same search with the support
// cardinality tracked, so a slack budget reproduces cover_exact bit for bit.
RadiusAssignment cover_bounded_exact(const MetricInstance& inst, const OneCoverProblem& p,
                                     const ExactGuard& guard = {});

// Greedy cover, then repeatedly merge the cheapest pair of balls (re-centering
// on one of the two centers so the union stays covered) until the budget holds.
RadiusAssignment cover_bounded_greedy(const MetricInstance& inst, const OneCoverProblem& p);

enum class Subroutine { Greedy, Exact };

inline const char* to_string(Subroutine s) { return s == Subroutine::Greedy ? "greedy" : "exact"; }

// Dispatch on backend and presence of a budget.
RadiusAssignment cover(const MetricInstance& inst, const OneCoverProblem& p, Subroutine sub,
                       const ExactGuard& guard = {});

}  // namespace mmc
