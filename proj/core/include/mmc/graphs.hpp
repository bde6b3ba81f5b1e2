#pragma once

#include <map>
#include <vector>

#include "mmc/instance.hpp"
#include "mmc/neighborhood.hpp"

namespace mmc {

constexpr int kUnreachable = 1 << 29;

// Undirected simple graph on a subset of the clients. Adjacency is indexed by
// client id; non-vertices have empty lists and a cleared membership flag.
struct IntersectionGraph {
  int level = 0;
  int num_clients = 0;
  std::vector<int> vertices;           // ascending client ids
  std::vector<char> member;            // size num_clients
  std::vector<std::vector<int>> adj;   // size num_clients, sorted neighbor lists

  bool has_vertex(int c) const { return c >= 0 && c < num_clients && member[c]; }
  bool has_edge(int a, int b) const;
  int edge_count() const;

  // BFS hop distances from src within the graph (kUnreachable when cut off).
  std::vector<int> bfs_hops(int src) const;

  // Every edge of this graph appears in g (vertex sets must agree).
  bool subgraph_of(const IntersectionGraph& g) const;
};

IntersectionGraph make_graph(int level, int num_clients, const std::vector<int>& vertices,
                             const std::vector<std::pair<int, int>>& edges);

// Clients adjacent when their i-neighborhoods share a server. pre: 1 <= i <= |Y|.
IntersectionGraph build_gi(const MetricInstance& inst, const NeighborhoodIndex& idx, int i);

// Demand-asymmetric overlap: x2 threatens x1 iff kappa(x1) > kappa(x2) and
// N(x1, kappa(x1) - floor(kappa(x2)/2)) meets N(x2, kappa(x2) - floor(kappa(x2)/2)),
// i.e. a private server of x2 is also an inner server of x1.
bool threatens(const NeighborhoodIndex& idx, const DemandProfile& dem, int x2, int x1);

// The kept subset after eliminating threats: no kept client threatens a kept
// client, and every dropped client threatens its recorded representative.
struct FilteredClients {
  std::vector<int> kept;                // ascending client ids
  std::vector<char> kept_mask;
  std::map<int, int> representative;    // dropped client -> kept client it threatens

  bool is_kept(int c) const { return kept_mask[c]; }
};

// Greedy sweep in (demand descending, client index ascending) order.
FilteredClients filter_clients(const NeighborhoodIndex& idx, const DemandProfile& dem);

// Demand-gated intersection graph on all clients: (x,x') is an edge iff
// i <= ceil(kappa(x)/2), i <= ceil(kappa(x')/2), and the level-i residual
// neighborhoods N(., kappa(.) - (i-1)) intersect. pre: 1 <= i <= kmax.
IntersectionGraph build_gtilde(const MetricInstance& inst, const NeighborhoodIndex& idx,
                               const DemandProfile& dem, int i);

// The same graph induced on the kept clients.
IntersectionGraph build_hi(const MetricInstance& inst, const NeighborhoodIndex& idx,
                           const DemandProfile& dem, const FilteredClients& filtered, int i);

// Nested 3-nets over a nested graph sequence. Graphs are supplied coarse-to-
// fine-net: the first graph carries every later graph's edges, nets grow along
// the sequence, and each net is a 3-net of its own graph (pairwise hop
// distance >= 3, every vertex within 2 hops of the net).
struct NetHierarchy {
  std::vector<int> levels;                  // graph levels, in supplied order
  std::vector<std::vector<int>> nets;       // ascending ids, nets[j] subset of nets[j+1]
  std::map<int, int> threshold;             // client -> level of first net containing it

  const std::vector<int>& net_at(int level) const;
  bool has_threshold(int c) const { return threshold.count(c) != 0; }
};

// "Arbitrary" vertex choices resolve to the lowest client index. errors:
// input error when a later graph has an edge missing from its predecessor.
NetHierarchy compute_net_hierarchy(const std::vector<IntersectionGraph>& graphs);

// 3-net soundness of `net` within `g`; returns an explanation on failure.
bool check_three_net(const IntersectionGraph& g, const std::vector<int>& net, std::string* why);

}  // namespace mmc
