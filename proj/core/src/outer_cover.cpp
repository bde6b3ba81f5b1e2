#include "mmc/outer_cover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mmc {

namespace {

void check_requirement(const MetricInstance& inst, const std::vector<int>& req) {
  if (static_cast<int>(req.size()) != inst.num_clients())
    throw_input("level", "requirement vector size does not match client count");
  for (int r : req)
    if (r < 0 || r > inst.num_servers())
      throw_input("level", "outer cover requirement outside [0, |Y|]");
}

// A ball serves a client when it contains it and its radius is at least the
// distance to the client's requirement-th nearest server.
bool serves(const MetricInstance& inst, const NeighborhoodIndex& idx, int server, double radius,
            int client, int req) {
  return inst.dist_cs(client, server) <= radius && radius >= idx.nbr_radius(client, req);
}

}  // namespace

OuterCover level_outer_cover(int level, int num_clients, RadiusAssignment rho) {
  if (level < 1) throw_input("level", "outer cover level must be >= 1");
  OuterCover oc;
  oc.rho = std::move(rho);
  oc.requirement.assign(static_cast<size_t>(num_clients), level);
  oc.uniform_level = level;
  return oc;
}

OuterCover kappa_outer_cover(std::vector<int> requirement, RadiusAssignment rho) {
  OuterCover oc;
  oc.rho = std::move(rho);
  oc.requirement = std::move(requirement);
  bool uniform = !oc.requirement.empty() &&
                 std::all_of(oc.requirement.begin(), oc.requirement.end(),
                             [&](int r) { return r == oc.requirement.front(); });
  if (uniform && oc.requirement.front() >= 1) oc.uniform_level = oc.requirement.front();
  return oc;
}

OuterCoverCheck validate_outer_cover(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                     const OuterCover& oc) {
  check_requirement(inst, oc.requirement);
  OuterCoverCheck out;
  for (int x = 0; x < inst.num_clients(); ++x) {
    const int req = oc.requirement[x];
    if (req == 0) continue;
    int serving = -1;
    for (int y = 0; y < inst.num_servers() && serving < 0; ++y)
      if (serves(inst, idx, y, oc.rho.radius(y), x, req)) serving = y;
    if (serving >= 0) {
      out.witness[x] = serving;
      continue;
    }
    out.valid = false;
    out.offending_client = x;
    double best_containing = -1.0;
    for (int y = 0; y < inst.num_servers(); ++y)
      if (inst.dist_cs(x, y) <= oc.rho.radius(y))
        best_containing = std::max(best_containing, oc.rho.radius(y));
    std::ostringstream os;
    os << "client " << x << " unserved: needs a containing ball of radius >= "
       << idx.nbr_radius(x, req) << ", ";
    if (best_containing < 0.0)
      os << "no ball contains it";
    else
      os << "largest containing ball has radius " << best_containing;
    out.detail = os.str();
    return out;
  }
  return out;
}

double OuterCoverBundle::total_balls_cost() const {
  double total = 0.0;
  for (const auto& lvl : levels) total += lvl.balls_cost;
  return total;
}

OuterCoverBundle extract_outer_covers(const MetricInstance& inst, const NeighborhoodIndex&,
                                      const RadiusAssignment& r, const DemandProfile& dem) {
  if (!is_feasible(inst, dem, r))
    throw_input("cover", "assignment does not satisfy the demand profile");

  const int ny = inst.num_servers();
  const double alpha = inst.alpha();
  std::vector<double> radius(ny);
  std::vector<char> alive(ny, 1);
  for (int s = 0; s < ny; ++s) radius[s] = r.radius(s);

  // Larger radius first, server index breaking ties.
  auto precedes = [&](int a, int b) {
    if (radius[a] != radius[b]) return radius[a] > radius[b];
    return a < b;
  };

  OuterCoverBundle out;
  for (int peel = 1; peel <= dem.kmax(); ++peel) {
    BundleLevel lvl;
    lvl.peel = peel;
    if (dem.is_uniform()) lvl.level = dem.kmax() - peel + 1;
    lvl.requirement.resize(inst.num_clients());
    std::vector<int> nominated;
    for (int x = 0; x < inst.num_clients(); ++x) {
      int req = std::max(0, dem.demand(x) - (peel - 1));
      lvl.requirement[x] = req;
      if (req == 0) continue;
      int largest = -1;
      for (int s = 0; s < ny; ++s) {
        if (!alive[s] || inst.dist_cs(x, s) > radius[s]) continue;
        if (largest < 0 || precedes(s, largest)) largest = s;
      }
      if (largest < 0)
        throw_invariant("extract", "no remaining ball contains client " + std::to_string(x) +
                                       " at peel " + std::to_string(peel));
      nominated.push_back(largest);
    }
    std::sort(nominated.begin(), nominated.end());
    nominated.erase(std::unique(nominated.begin(), nominated.end()), nominated.end());
    std::sort(nominated.begin(), nominated.end(), precedes);

    // Greedy disjointification: keep the largest nomination, drop everything
    // it intersects, repeat.
    std::vector<char> dropped(nominated.size(), 0);
    RadiusAssignment expanded;
    for (size_t a = 0; a < nominated.size(); ++a) {
      if (dropped[a]) continue;
      int s = nominated[a];
      lvl.balls.push_back({inst.server_point(s), radius[s]});
      lvl.balls_cost += std::pow(radius[s], alpha);
      expanded.set(s, 3.0 * radius[s]);
      alive[s] = 0;
      for (size_t b = a + 1; b < nominated.size(); ++b)
        if (!dropped[b] &&
            inst.dist_ss(s, nominated[b]) <= radius[s] + radius[nominated[b]])
          dropped[b] = 1;
    }
    lvl.expanded = kappa_outer_cover(lvl.requirement, std::move(expanded));
    if (dem.is_uniform()) lvl.expanded.uniform_level = lvl.level;
    lvl.mu_hat = lvl.expanded.rho.cost(alpha);
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

OuterCoverBundle extract_outer_covers(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                      const RadiusAssignment& r, int k) {
  return extract_outer_covers(inst, idx, r, DemandProfile::uniform(k, inst.num_clients()));
}

OuterCover bound_outer_cover_servers(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                     const OuterCover& oc, const RadiusAssignment& r1) {
  auto check = validate_outer_cover(inst, idx, oc);
  if (!check.valid) throw_input("cover", "input is not a valid outer cover: " + check.detail);
  for (int x = 0; x < inst.num_clients(); ++x)
    if (oc.requirement[x] > 0 && !support_covers(inst, r1, x))
      throw_input("cover", "r1 does not 1-cover obligated client " + std::to_string(x));

  // Serving balls of oc, each with the obligated clients it serves.
  const int ny = inst.num_servers();
  struct ServingBall {
    int server;
    double radius;
    std::vector<int> served;
  };
  std::vector<ServingBall> pool;
  for (int s = 0; s < ny; ++s) {
    ServingBall b{s, oc.rho.radius(s), {}};
    for (int x = 0; x < inst.num_clients(); ++x)
      if (oc.requirement[x] > 0 && serves(inst, idx, s, b.radius, x, oc.requirement[x]))
        b.served.push_back(x);
    if (!b.served.empty()) pool.push_back(std::move(b));
  }

  std::vector<char> claimed(pool.size(), 0);
  RadiusAssignment rho;
  for (const auto& [yj, rj] : r1.entries()) {
    double rstar = rj;
    for (size_t b = 0; b < pool.size(); ++b) {
      if (claimed[b]) continue;
      bool shares = std::any_of(pool[b].served.begin(), pool[b].served.end(),
                                [&](int x) { return inst.dist_cs(x, yj) <= rj; });
      if (shares) {
        claimed[b] = 1;
        rstar = std::max(rstar, pool[b].radius);
      }
    }
    rho.set(yj, 3.0 * rstar);
  }

  OuterCover out;
  out.rho = std::move(rho);
  out.requirement = oc.requirement;
  out.uniform_level = oc.uniform_level;
  return out;
}

RadiusAssignment host_outer_cover(const MetricInstance& inst, const NeighborhoodIndex& idx,
                                  const OuterCover& oc, const std::vector<int>& subset,
                                  const std::vector<int>& targets, int hop_bound, int expansion,
                                  const IntersectionGraph& graph) {
  auto check = validate_outer_cover(inst, idx, oc);
  if (!check.valid) throw_input("cover", "input is not a valid outer cover: " + check.detail);

  std::vector<int> hosts = subset;
  std::sort(hosts.begin(), hosts.end());

  RadiusAssignment out;
  for (int s = 0; s < inst.num_servers(); ++s) {
    const double rho = oc.rho.radius(s);
    bool serves_any = false;
    for (int x = 0; x < inst.num_clients() && !serves_any; ++x)
      serves_any = oc.requirement[x] > 0 && serves(inst, idx, s, rho, x, oc.requirement[x]);
    if (!serves_any) continue;
    const double reach = expansion * rho;
    for (int host : hosts)
      if (inst.dist_ss(s, host) <= reach) {
        out.raise(host, 2.0 * reach);
        break;  // lowest index hosts
      }
  }

  for (int x : targets)
    if (!support_covers(inst, out, x)) {
      std::ostringstream os;
      os << "hosted cover misses client " << x << ": no client within " << hop_bound
         << " hops in the level-" << graph.level
         << " intersection graph has a designated server in its neighborhood";
      throw_invariant("hosting", os.str());
    }
  return out;
}

}  // namespace mmc
