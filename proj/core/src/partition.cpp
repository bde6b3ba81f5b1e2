#include "mmc/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mmc {

namespace {

int ceil_half(int k) { return (k + 1) / 2; }

// Shared picks take the available server farthest along the client's
// neighborhood order (max rank); with that rule the level-i server y_i(x) is
// taken whenever it is still available, which is what keeps the inner private
// neighborhoods stocked for later levels.
int pick_farthest_available(const NeighborhoodIndex& idx, const std::vector<char>& available,
                            int client, int size) {
  auto nbhd = idx.neighborhood(client, size);
  for (int j = size - 1; j >= 0; --j)
    if (available[nbhd[j]]) return nbhd[j];
  return -1;
}

int pick_nearest_available(const NeighborhoodIndex& idx, const std::vector<char>& available,
                           int client, int size) {
  for (int s : idx.neighborhood(client, size))
    if (available[s]) return s;
  return -1;
}

[[noreturn]] void availability_failure(const PartitionLog& log, int iteration, int client,
                                       SubsetKind kind, int size) {
  std::ostringstream os;
  os << "no available server for client " << client << " at iteration " << iteration << " ("
     << to_string(kind) << " pick, neighborhood size " << size << ", " << log.records.size()
     << " picks made so far)";
  throw_invariant("availability", os.str());
}

void sort_entries(ServerFamily& family) {
  for (auto& e : family.entries) std::sort(e.servers.begin(), e.servers.end());
}

}  // namespace

const FamilyEntry* ServerFamily::find(int level, SubsetKind kind) const {
  for (const auto& e : entries)
    if (e.level == level && e.kind == kind) return &e;
  return nullptr;
}

PartitionResult compute_server_subsets_uniform(const MetricInstance& inst,
                                               const NeighborhoodIndex& idx, int k) {
  if (k < 1 || k > inst.num_servers())
    throw_infeasible("coverage demand " + std::to_string(k) + " exceeds server count");
  const int l = ceil_half(k);
  const bool odd = (k % 2) != 0;

  PartitionResult out;
  out.log.nonuniform = false;
  out.log.k = k;
  out.log.l = l;
  for (int i = k; i >= l; --i) out.graphs.push_back(build_gi(inst, idx, i));
  out.nets = compute_net_hierarchy(out.graphs);
  out.filtered.kept.resize(inst.num_clients());
  std::iota(out.filtered.kept.begin(), out.filtered.kept.end(), 0);
  out.filtered.kept_mask.assign(inst.num_clients(), 1);

  std::vector<char> available(inst.num_servers(), 1);
  out.family.k = k;
  out.family.l = l;
  for (int i = k; i >= l; --i) {
    FamilyEntry shared{i, SubsetKind::Shared, {}};
    FamilyEntry priv{i, SubsetKind::Private, {}};
    for (int xc : out.nets.net_at(i)) {
      if (i > l) {
        int ys = pick_farthest_available(idx, available, xc, i);
        if (ys < 0) availability_failure(out.log, i, xc, SubsetKind::Shared, i);
        shared.servers.push_back(ys);
        available[ys] = 0;
        out.log.records.push_back({i, xc, ys, SubsetKind::Shared, i});
      }
      if (i > l || (i == l && odd)) {
        int yp = pick_nearest_available(idx, available, xc, l);
        if (yp < 0) availability_failure(out.log, i, xc, SubsetKind::Private, l);
        priv.servers.push_back(yp);
        available[yp] = 0;
        out.log.records.push_back({i, xc, yp, SubsetKind::Private, l});
      }
    }
    if (i > l) {
      out.family.entries.push_back(std::move(shared));
      out.family.entries.push_back(std::move(priv));
    } else if (odd) {
      out.family.entries.push_back(std::move(priv));
    }
  }
  sort_entries(out.family);
  return out;
}

NonuniformStructures build_nonuniform_structures(const MetricInstance& inst,
                                                 const NeighborhoodIndex& idx,
                                                 const DemandProfile& dem) {
  dem.validate(inst);
  NonuniformStructures s;
  s.filtered = filter_clients(idx, dem);
  for (int i = 1; i <= dem.kmax(); ++i)
    s.graphs.push_back(build_hi(inst, idx, dem, s.filtered, i));
  s.nets = compute_net_hierarchy(s.graphs);
  return s;
}

PartitionResult compute_server_subsets_nonuniform(const MetricInstance& inst,
                                                  const NeighborhoodIndex& idx,
                                                  const DemandProfile& dem,
                                                  const FilteredClients& filtered,
                                                  const NetHierarchy& nets) {
  dem.validate(inst);
  const int k = dem.kmax();
  const int l = ceil_half(k);
  const bool odd = (k % 2) != 0;

  PartitionResult out;
  out.log.nonuniform = true;
  out.log.k = k;
  out.log.l = l;
  out.filtered = filtered;
  out.nets = nets;

  std::vector<char> available(inst.num_servers(), 1);
  out.family.k = k;
  out.family.l = l;
  for (int i = 1; i <= l; ++i) {
    FamilyEntry shared{i, SubsetKind::Shared, {}};
    FamilyEntry priv{i, SubsetKind::Private, {}};
    for (int xc : nets.net_at(i)) {
      const int kc = dem.demand(xc);
      if (kc >= 2 * i) {
        int size = kc - (i - 1);
        int ys = pick_farthest_available(idx, available, xc, size);
        if (ys < 0) availability_failure(out.log, i, xc, SubsetKind::Shared, size);
        shared.servers.push_back(ys);
        available[ys] = 0;
        out.log.records.push_back({i, xc, ys, SubsetKind::Shared, size});
      }
      if (kc >= 2 * i - 1) {
        int size = ceil_half(kc);
        int yp = pick_nearest_available(idx, available, xc, size);
        if (yp < 0) availability_failure(out.log, i, xc, SubsetKind::Private, size);
        priv.servers.push_back(yp);
        available[yp] = 0;
        out.log.records.push_back({i, xc, yp, SubsetKind::Private, size});
      }
    }
    if (!odd || i < l) out.family.entries.push_back(std::move(shared));
    out.family.entries.push_back(std::move(priv));
  }
  sort_entries(out.family);
  return out;
}

PartitionResult compute_server_subsets_nonuniform(const MetricInstance& inst,
                                                  const NeighborhoodIndex& idx,
                                                  const DemandProfile& dem) {
  auto s = build_nonuniform_structures(inst, idx, dem);
  auto out = compute_server_subsets_nonuniform(inst, idx, dem, s.filtered, s.nets);
  out.graphs = std::move(s.graphs);
  return out;
}

namespace {

struct Replay {
  const PartitionLog& log;
  const NeighborhoodIndex& idx;
  const DemandProfile& dem;
  AuditVerdict verdict;
  std::vector<char> available;
  std::map<int, std::vector<char>> at_start;  // iteration -> availability at its beginning

  void fail(const std::string& what) {
    verdict.ok = false;
    verdict.violations.push_back(what);
  }

  int nbhd_size(int client, int iteration, SubsetKind kind) const {
    if (!log.nonuniform)
      return kind == SubsetKind::Shared ? iteration : log.l;
    return kind == SubsetKind::Shared ? dem.demand(client) - (iteration - 1)
                                      : ceil_half(dem.demand(client));
  }

  // Available servers within N(client, size) under a given availability state.
  std::vector<int> avail_in(const std::vector<char>& state, int client, int size) const {
    std::vector<int> out;
    for (int s : idx.neighborhood(client, size))
      if (state[s]) out.push_back(s);
    return out;
  }

  int max_rank_of(const std::vector<int>& servers, int client) const {
    int best = -1;
    for (int s : servers)
      if (best == -1 || idx.rank(client, s) > idx.rank(client, best)) best = s;
    return best;
  }
};

}  // namespace

AuditVerdict audit_availability(const PartitionLog& log, const NeighborhoodIndex& idx,
                                const DemandProfile& dem) {
  Replay rp{log, idx, dem, {}, std::vector<char>(static_cast<size_t>(idx.num_servers()), 1), {}};

  // Pass 1: replay picks in order, validating each one and snapshotting the
  // availability state at the start of every iteration.
  int current = log.nonuniform ? 0 : log.k + 1;
  for (const auto& rec : log.records) {
    if (log.nonuniform ? rec.iteration < current : rec.iteration > current)
      rp.fail("record iterations out of order at iteration " + std::to_string(rec.iteration));
    if (rec.iteration != current) {
      current = rec.iteration;
      rp.at_start.emplace(current, rp.available);
    }
    std::ostringstream at;
    at << " (client " << rec.client << ", iteration " << rec.iteration << ", "
       << to_string(rec.kind) << ")";
    int expect = rp.nbhd_size(rec.client, rec.iteration, rec.kind);
    if (rec.neighborhood != expect)
      rp.fail("recorded neighborhood size " + std::to_string(rec.neighborhood) + " != " +
              std::to_string(expect) + at.str());
    if (!rp.available[rec.server])
      rp.fail("server " + std::to_string(rec.server) + " chosen twice" + at.str());
    int r = idx.rank(rec.client, rec.server);
    if (r > rec.neighborhood)
      rp.fail("chosen server outside the searched neighborhood" + at.str());
    auto avail = rp.avail_in(rp.available, rec.client, rec.neighborhood);
    if (rec.kind == SubsetKind::Shared) {
      for (int s : avail)
        if (idx.rank(rec.client, s) > r)
          rp.fail("shared pick was not the farthest available server" + at.str());
    } else {
      for (int s : avail)
        if (idx.rank(rec.client, s) < r)
          rp.fail("private pick was not the nearest available server" + at.str());
    }
    rp.available[rec.server] = 0;
    ++rp.verdict.decisions_checked;
  }
  // Final state doubles as the start of the iteration after the last one.
  rp.at_start.emplace(log.nonuniform ? current + 1 : current - 1, rp.available);

  // Pass 2: availability lower bounds at every decision point.
  const int k = log.k;
  for (const auto& rec : log.records) {
    auto snap = rp.at_start.find(rec.iteration);
    if (snap == rp.at_start.end()) continue;
    int size = log.nonuniform ? dem.demand(rec.client) - (rec.iteration - 1) : rec.iteration;
    int have = static_cast<int>(rp.avail_in(snap->second, rec.client, size).size());
    int need = log.nonuniform ? dem.demand(rec.client) - 2 * (rec.iteration - 1)
                              : 2 * rec.iteration - k;
    if (have < need) {
      std::ostringstream os;
      os << "availability bound violated for client " << rec.client << " at iteration "
         << rec.iteration << ": |A| = " << have << " < " << need;
      rp.fail(os.str());
    }
  }

  // Pass 3: between consecutive iterations a net client loses at most two
  // available servers from its neighborhood, and a two-server loss must
  // include the farthest available one.
  std::map<int, std::set<int>> iters_of;
  for (const auto& rec : log.records) iters_of[rec.client].insert(rec.iteration);
  for (const auto& [client, iters] : iters_of) {
    for (int i : iters) {
      int next = log.nonuniform ? i + 1 : i - 1;
      auto cur_snap = rp.at_start.find(i);
      auto next_snap = rp.at_start.find(next);
      if (cur_snap == rp.at_start.end() || next_snap == rp.at_start.end()) continue;
      int cur_size = rp.nbhd_size(client, i, SubsetKind::Shared);
      int next_size = log.nonuniform ? std::max(0, dem.demand(client) - (next - 1))
                                     : std::max(0, next);
      if (!log.nonuniform && next < log.l) continue;
      if (log.nonuniform && next > ceil_half(dem.demand(client))) continue;
      auto cur = rp.avail_in(cur_snap->second, client, cur_size);
      auto nxt = rp.avail_in(next_snap->second, client, next_size);
      if (static_cast<int>(nxt.size()) < static_cast<int>(cur.size()) - 2) {
        std::ostringstream os;
        os << "client " << client << " lost more than two available servers between iterations "
           << i << " and " << next;
        rp.fail(os.str());
      } else if (static_cast<int>(nxt.size()) == static_cast<int>(cur.size()) - 2 &&
                 !cur.empty()) {
        int far = rp.max_rank_of(cur, client);
        bool far_lost = std::find(nxt.begin(), nxt.end(), far) == nxt.end();
        if (!far_lost) {
          std::ostringstream os;
          os << "client " << client << " lost two servers between iterations " << i << " and "
             << next << " but kept the farthest available one";
          rp.fail(os.str());
        }
      }
    }
  }
  return rp.verdict;
}

bool family_pairwise_disjoint(const ServerFamily& family) {
  std::set<int> seen;
  for (const auto& e : family.entries)
    for (int s : e.servers)
      if (!seen.insert(s).second) return false;
  return true;
}

std::optional<int> uniform_hitting_violation(const MetricInstance& inst,
                                             const NeighborhoodIndex& idx,
                                             const FamilyEntry& entry,
                                             const IntersectionGraph& g) {
  const int level = entry.level;
  std::vector<char> hits(inst.num_clients(), 0);
  for (int c = 0; c < inst.num_clients(); ++c)
    for (int s : entry.servers)
      if (idx.rank(c, s) <= level) {
        hits[c] = 1;
        break;
      }
  for (int x = 0; x < inst.num_clients(); ++x) {
    auto hops = g.bfs_hops(x);
    bool ok = false;
    for (int c = 0; c < inst.num_clients() && !ok; ++c)
      if (hops[c] <= 2 && hits[c]) ok = true;
    if (!ok) return x;
  }
  return std::nullopt;
}

std::optional<int> nonuniform_hitting_violation(const MetricInstance& inst,
                                                const NeighborhoodIndex& idx,
                                                const DemandProfile& dem,
                                                const FamilyEntry& entry,
                                                const IntersectionGraph& gtilde) {
  const int i = entry.level;
  const int gate = entry.kind == SubsetKind::Shared ? 2 * i : 2 * i - 1;
  std::vector<char> hits(inst.num_clients(), 0);
  for (int c = 0; c < inst.num_clients(); ++c) {
    int residual = dem.demand(c) - (i - 1);
    if (residual < 1) continue;
    for (int s : entry.servers)
      if (idx.rank(c, s) <= residual) {
        hits[c] = 1;
        break;
      }
  }
  for (int x = 0; x < inst.num_clients(); ++x) {
    if (dem.demand(x) < gate) continue;
    auto hops = gtilde.bfs_hops(x);
    bool ok = false;
    for (int c = 0; c < inst.num_clients() && !ok; ++c)
      if (hops[c] <= 3 && hits[c]) ok = true;
    if (!ok) return x;
  }
  return std::nullopt;
}

}  // namespace mmc
