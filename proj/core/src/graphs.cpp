#include "mmc/graphs.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace mmc {

bool IntersectionGraph::has_edge(int a, int b) const {
  if (!has_vertex(a) || !has_vertex(b)) return false;
  return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

int IntersectionGraph::edge_count() const {
  int deg = 0;
  for (const auto& nbrs : adj) deg += static_cast<int>(nbrs.size());
  return deg / 2;
}

std::vector<int> IntersectionGraph::bfs_hops(int src) const {
  std::vector<int> dist(num_clients, kUnreachable);
  if (!has_vertex(src)) return dist;
  std::deque<int> queue{src};
  dist[src] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

bool IntersectionGraph::subgraph_of(const IntersectionGraph& g) const {
  if (vertices != g.vertices) return false;
  for (int u : vertices)
    for (int v : adj[u])
      if (u < v && !g.has_edge(u, v)) return false;
  return true;
}

IntersectionGraph make_graph(int level, int num_clients, const std::vector<int>& vertices,
                             const std::vector<std::pair<int, int>>& edges) {
  IntersectionGraph g;
  g.level = level;
  g.num_clients = num_clients;
  g.vertices = vertices;
  std::sort(g.vertices.begin(), g.vertices.end());
  g.member.assign(num_clients, 0);
  g.adj.assign(num_clients, {});
  for (int v : g.vertices) g.member[v] = 1;
  for (auto [a, b] : edges) {
    if (a == b || !g.has_vertex(a) || !g.has_vertex(b))
      throw_input("graph", "bad edge in graph construction");
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& nbrs : g.adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

IntersectionGraph build_gi(const MetricInstance& inst, const NeighborhoodIndex& idx, int i) {
  if (i < 1 || i > inst.num_servers()) throw_input("level", "neighborhood level out of range");
  const int nx = inst.num_clients();
  std::vector<int> vertices(nx);
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < nx; ++a)
    for (int b = a + 1; b < nx; ++b)
      if (idx.neighborhoods_intersect(a, i, b, i)) edges.emplace_back(a, b);
  return make_graph(i, nx, vertices, edges);
}

bool threatens(const NeighborhoodIndex& idx, const DemandProfile& dem, int x2, int x1) {
  const int k1 = dem.demand(x1);
  const int k2 = dem.demand(x2);
  if (k1 <= k2) return false;
  return idx.neighborhoods_intersect(x1, k1 - k2 / 2, x2, k2 - k2 / 2);
}

FilteredClients filter_clients(const NeighborhoodIndex& idx, const DemandProfile& dem) {
  const int nx = dem.size();
  std::vector<int> order(nx);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return dem.demand(a) > dem.demand(b); });

  FilteredClients out;
  out.kept_mask.assign(nx, 0);
  std::vector<char> marked(nx, 0);
  for (int x : order) {
    if (marked[x]) continue;
    out.kept_mask[x] = 1;
    for (int z = 0; z < nx; ++z)
      if (!marked[z] && z != x && threatens(idx, dem, z, x)) {
        marked[z] = 1;
        out.representative[z] = x;
      }
  }
  for (int c = 0; c < nx; ++c)
    if (out.kept_mask[c]) out.kept.push_back(c);
  return out;
}

namespace {

int ceil_half(int k) { return (k + 1) / 2; }

IntersectionGraph build_gated(const MetricInstance& inst, const NeighborhoodIndex& idx,
                              const DemandProfile& dem, const std::vector<int>& vertices, int i) {
  if (i < 1 || i > dem.kmax()) throw_input("level", "demand level out of range");
  std::vector<std::pair<int, int>> edges;
  for (size_t p = 0; p < vertices.size(); ++p) {
    int a = vertices[p];
    if (i > ceil_half(dem.demand(a))) continue;
    for (size_t q = p + 1; q < vertices.size(); ++q) {
      int b = vertices[q];
      if (i > ceil_half(dem.demand(b))) continue;
      if (idx.neighborhoods_intersect(a, dem.demand(a) - (i - 1), b, dem.demand(b) - (i - 1)))
        edges.emplace_back(a, b);
    }
  }
  return make_graph(i, inst.num_clients(), vertices, edges);
}

}  // namespace

IntersectionGraph build_gtilde(const MetricInstance& inst, const NeighborhoodIndex& idx,
                               const DemandProfile& dem, int i) {
  std::vector<int> vertices(inst.num_clients());
  std::iota(vertices.begin(), vertices.end(), 0);
  return build_gated(inst, idx, dem, vertices, i);
}

IntersectionGraph build_hi(const MetricInstance& inst, const NeighborhoodIndex& idx,
                           const DemandProfile& dem, const FilteredClients& filtered, int i) {
  return build_gated(inst, idx, dem, filtered.kept, i);
}

const std::vector<int>& NetHierarchy::net_at(int level) const {
  for (size_t j = 0; j < levels.size(); ++j)
    if (levels[j] == level) return nets[j];
  throw_input("level", "no net at level " + std::to_string(level));
}

namespace {

// Extends `net` (already pairwise >= 3 apart in g) to a 3-net of g: repeatedly
// mark everything within 2 hops of the net, then admit the lowest unmarked
// vertex.
void extend_net(const IntersectionGraph& g, std::vector<int>& net) {
  std::vector<char> marked(g.num_clients, 0);
  auto mark_around = [&](int v) {
    marked[v] = 1;
    for (int u : g.adj[v]) {
      marked[u] = 1;
      for (int w : g.adj[u]) marked[w] = 1;
    }
  };
  for (int v : net) mark_around(v);
  for (int v : g.vertices) {
    if (marked[v]) continue;
    net.push_back(v);
    mark_around(v);
  }
  std::sort(net.begin(), net.end());
}

}  // namespace

bool check_three_net(const IntersectionGraph& g, const std::vector<int>& net, std::string* why) {
  std::vector<char> in_net(g.num_clients, 0);
  for (int v : net) in_net[v] = 1;
  std::vector<int> best(g.num_clients, kUnreachable);
  for (int v : net) {
    auto hops = g.bfs_hops(v);
    for (int u : g.vertices) {
      if (in_net[u] && u != v && hops[u] < 3) {
        if (why) {
          std::ostringstream os;
          os << "net vertices " << v << " and " << u << " are " << hops[u] << " hops apart";
          *why = os.str();
        }
        return false;
      }
      best[u] = std::min(best[u], hops[u]);
    }
  }
  for (int u : g.vertices)
    if (best[u] > 2) {
      if (why) *why = "vertex " + std::to_string(u) + " is more than 2 hops from the net";
      return false;
    }
  return true;
}

NetHierarchy compute_net_hierarchy(const std::vector<IntersectionGraph>& graphs) {
  if (graphs.empty()) throw_input("graph", "empty graph sequence");
  for (size_t j = 1; j < graphs.size(); ++j)
    if (!graphs[j].subgraph_of(graphs[j - 1]))
      throw_input("graph", "graph at position " + std::to_string(j) +
                               " is not a subgraph of its predecessor");

  NetHierarchy h;
  std::vector<int> net;
  if (!graphs.front().vertices.empty()) net.push_back(graphs.front().vertices.front());
  for (const auto& g : graphs) {
    extend_net(g, net);
    std::string why;
    if (!check_three_net(g, net, &why))
      throw_invariant("net", "level " + std::to_string(g.level) + ": " + why);
    h.levels.push_back(g.level);
    h.nets.push_back(net);
    for (int v : net)
      if (!h.threshold.count(v)) h.threshold[v] = g.level;
  }
  return h;
}

}  // namespace mmc
