#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmc/graphs.hpp"
#include "mmc/instance.hpp"
#include "mmc/neighborhood.hpp"

namespace mmc {

enum class SubsetKind { Shared, Private };

inline const char* to_string(SubsetKind k) { return k == SubsetKind::Shared ? "shared" : "private"; }

struct FamilyEntry {
  int level = 0;
  SubsetKind kind = SubsetKind::Private;
  std::vector<int> servers;  // ascending
};

// The pairwise-disjoint server subsets the reduction hands to the 1-cover
// subroutine, in emission order. Uniform case: (shared, private) pairs for
// levels k down to l+1, plus a level-l private set when k is odd. Non-uniform
// case: pairs for levels 1..l-1, plus (shared iff k even, private) at level l.
struct ServerFamily {
  int k = 0;
  int l = 0;
  std::vector<FamilyEntry> entries;

  const FamilyEntry* find(int level, SubsetKind kind) const;
};

struct PickRecord {
  int iteration = 0;        // outer-loop level i
  int client = 0;           // net client the pick was made for
  int server = 0;
  SubsetKind kind = SubsetKind::Private;
  int neighborhood = 0;     // size of the neighborhood that was searched
};

// Complete trace of one partitioning run; enough to replay every decision.
struct PartitionLog {
  bool nonuniform = false;
  int k = 0;
  int l = 0;
  std::vector<PickRecord> records;
};

struct PartitionResult {
  ServerFamily family;
  NetHierarchy nets;
  FilteredClients filtered;                // kept == all clients in the uniform case
  std::vector<IntersectionGraph> graphs;   // the graphs the nets were built on, coarse-to-fine
  PartitionLog log;
};

// Uniform partitioning: walks levels k down to l = ceil(k/2) over a truncated
// net hierarchy of the neighborhood-intersection graphs, taking per net client
// the farthest available server of its level neighborhood (shared) and the
// nearest available private server (private). Availability can never run out;
// if it does, that is a bug and the run aborts with an invariant violation.
// pre: 1 <= k <= |Y|.
PartitionResult compute_server_subsets_uniform(const MetricInstance& inst,
                                               const NeighborhoodIndex& idx, int k);

// Structures behind the non-uniform partitioning, exposed so callers can
// inspect or reuse them: threat-filtered clients, the gated intersection
// graphs on the kept clients for levels 1..kmax, and their net hierarchy.
struct NonuniformStructures {
  FilteredClients filtered;
  std::vector<IntersectionGraph> graphs;
  NetHierarchy nets;
};

NonuniformStructures build_nonuniform_structures(const MetricInstance& inst,
                                                 const NeighborhoodIndex& idx,
                                                 const DemandProfile& dem);

// Non-uniform partitioning over precomputed structures; levels run 1..l with
// the shared pick gated on kappa(x) >= 2i and the private pick on >= 2i-1.
PartitionResult compute_server_subsets_nonuniform(const MetricInstance& inst,
                                                  const NeighborhoodIndex& idx,
                                                  const DemandProfile& dem,
                                                  const FilteredClients& filtered,
                                                  const NetHierarchy& nets);

// Convenience overload that builds the structures itself.
PartitionResult compute_server_subsets_nonuniform(const MetricInstance& inst,
                                                  const NeighborhoodIndex& idx,
                                                  const DemandProfile& dem);

struct AuditVerdict {
  bool ok = true;
  int decisions_checked = 0;
  std::vector<std::string> violations;
};

// Replays a completed run: recomputes the available-server sets at every
// decision point and asserts the availability lower bounds, the at-most-two-
// losses-per-iteration property, and that every shared pick really was the
// farthest available server (in neighborhood-rank order) at choice time.
AuditVerdict audit_availability(const PartitionLog& log, const NeighborhoodIndex& idx,
                                const DemandProfile& dem);

bool family_pairwise_disjoint(const ServerFamily& family);

// Uniform hitting property for one family entry: every client has a client
// within 2 hops in g whose level-neighborhood meets the entry. Returns a
// violating client, if any.
std::optional<int> uniform_hitting_violation(const MetricInstance& inst,
                                             const NeighborhoodIndex& idx,
                                             const FamilyEntry& entry,
                                             const IntersectionGraph& g);

// Non-uniform hitting property: every client with kappa(x) >= 2i (shared) or
// >= 2i-1 (private) has a client within 3 hops in gtilde whose residual
// neighborhood N(x', kappa(x') - (i-1)) meets the entry.
std::optional<int> nonuniform_hitting_violation(const MetricInstance& inst,
                                                const NeighborhoodIndex& idx,
                                                const DemandProfile& dem,
                                                const FamilyEntry& entry,
                                                const IntersectionGraph& gtilde);

}  // namespace mmc
