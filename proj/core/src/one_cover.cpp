#include "mmc/one_cover.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>

namespace mmc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_problem(const MetricInstance& inst, const OneCoverProblem& p) {
  for (int c : p.clients) inst.check_client(c);
  for (int s : p.servers) inst.check_server(s);
  if (!p.clients.empty() && p.servers.empty())
    throw_infeasible("cannot cover clients with an empty server set");
  if (p.clients.size() > 64) throw_input("guard", "cover subproblem exceeds 64 clients");
  if (p.budget && (*p.budget < 1 || *p.budget > static_cast<int>(p.servers.size())))
    throw_input("budget", "server budget outside [1, |Y'|]");
}

}  // namespace

CandidateBalls build_candidate_balls(const MetricInstance& inst, const OneCoverProblem& p) {
  CandidateBalls out;
  out.clients = sorted_unique(p.clients);
  const int nc = static_cast<int>(out.clients.size());
  out.full_mask = nc == 64 ? ~uint64_t{0} : (uint64_t{1} << nc) - 1;
  for (int s : sorted_unique(p.servers)) {
    CandidateBalls::PerServer e;
    e.server = s;
    std::set<double> radii{0.0};
    for (int c : out.clients) radii.insert(inst.dist_cs(c, s));
    e.radii.assign(radii.begin(), radii.end());
    e.masks.reserve(e.radii.size());
    for (double r : e.radii) {
      uint64_t mask = 0;
      for (int j = 0; j < nc; ++j)
        if (inst.dist_cs(out.clients[j], s) <= r) mask |= uint64_t{1} << j;
      e.masks.push_back(mask);
    }
    out.servers.push_back(std::move(e));
  }
  return out;
}

RadiusAssignment cover_greedy(const MetricInstance& inst, const OneCoverProblem& p) {
  check_problem(inst, p);
  RadiusAssignment out;
  if (p.clients.empty()) return out;

  const auto cands = build_candidate_balls(inst, p);
  const double alpha = inst.alpha();
  uint64_t covered = 0;
  while (covered != cands.full_mask) {
    double best_score = kInf;
    double best_radius = kInf;
    int best_server = -1;
    uint64_t best_mask = 0;
    for (const auto& e : cands.servers)
      for (size_t j = 0; j < e.radii.size(); ++j) {
        int newly = std::popcount(e.masks[j] & ~covered);
        if (newly == 0) continue;
        double score = std::pow(e.radii[j], alpha) / newly;
        if (score < best_score || (score == best_score && (e.radii[j] < best_radius ||
                                   (e.radii[j] == best_radius && e.server < best_server)))) {
          best_score = score;
          best_radius = e.radii[j];
          best_server = e.server;
          best_mask = e.masks[j];
        }
      }
    covered |= best_mask;
    out.raise(best_server, best_radius);
  }
  return out;
}

namespace {

struct ExactOption {
  double radius = 0.0;     // meaningful when used
  uint64_t mask = 0;
  double cost = 0.0;
  bool used = false;
};

struct ExactSearch {
  const CandidateBalls& cands;
  double alpha;
  int budget;
  double upper;                               // greedy cost; optimum never exceeds it
  std::vector<std::vector<ExactOption>> options;
  std::vector<std::vector<double>> dist_pow;  // [server pos][client pos]
  std::vector<double> suffix_lb;              // scratch, per client: min dist^a over servers >= i

  double best_cost = kInf;
  std::vector<ExactOption> best;
  std::vector<ExactOption> current;

  ExactSearch(const MetricInstance& inst, const CandidateBalls& cb, int budget_in, double upper_in)
      : cands(cb), alpha(inst.alpha()), budget(budget_in), upper(upper_in) {
    const int m = static_cast<int>(cb.servers.size());
    const int nc = static_cast<int>(cb.clients.size());
    options.resize(m);
    for (int i = 0; i < m; ++i) {
      const auto& e = cb.servers[i];
      options[i].push_back({0.0, 0, 0.0, false});  // leave the server unused
      uint64_t last_mask = ~uint64_t{0};
      for (size_t j = 0; j < e.radii.size(); ++j) {
        if (e.masks[j] == 0 || e.masks[j] == last_mask) continue;  // dominated
        options[i].push_back({e.radii[j], e.masks[j], std::pow(e.radii[j], alpha), true});
        last_mask = e.masks[j];
      }
    }
    dist_pow.assign(m, std::vector<double>(nc, 0.0));
    for (int i = 0; i < m; ++i)
      for (int c = 0; c < nc; ++c)
        dist_pow[i][c] = std::pow(inst.dist_cs(cb.clients[c], cb.servers[i].server), alpha);
    current.resize(m);
  }

  // Any completion must pay at least the cheapest way to reach each uncovered
  // client from the remaining servers; one ball may serve them all, so the max
  // over clients is an admissible bound.
  double completion_bound(int i, uint64_t covered) const {
    const int m = static_cast<int>(options.size());
    double bound = 0.0;
    uint64_t missing = cands.full_mask & ~covered;
    while (missing) {
      int c = std::countr_zero(missing);
      missing &= missing - 1;
      double cheapest = kInf;
      for (int j = i; j < m; ++j) cheapest = std::min(cheapest, dist_pow[j][c]);
      bound = std::max(bound, cheapest);
    }
    return bound;
  }

  void dfs(int i, uint64_t covered, int used, double cost) {
    if (cost > upper || cost >= best_cost) return;
    const int m = static_cast<int>(options.size());
    if (covered == cands.full_mask) {
      for (int j = i; j < m; ++j) current[j] = {0.0, 0, 0.0, false};
      best_cost = cost;
      best = current;
      return;
    }
    if (i == m || used >= budget) return;
    if (cost + completion_bound(i, covered) >= best_cost) return;
    for (const auto& opt : options[i]) {
      current[i] = opt;
      dfs(i + 1, covered | opt.mask, used + (opt.used ? 1 : 0), cost + opt.cost);
    }
  }
};

RadiusAssignment run_exact(const MetricInstance& inst, const OneCoverProblem& p, int budget,
                           const ExactGuard& guard) {
  check_problem(inst, p);
  RadiusAssignment out;
  if (p.clients.empty()) return out;
  if (!guard.override_sizes && (static_cast<int>(p.servers.size()) > guard.max_servers ||
                                static_cast<int>(p.clients.size()) > guard.max_clients))
    throw_input("guard", "exact cover refused: size guard exceeded (|Y'|=" +
                             std::to_string(p.servers.size()) +
                             ", |X'|=" + std::to_string(p.clients.size()) + ")");

  const auto cands = build_candidate_balls(inst, p);
  OneCoverProblem unbudgeted{p.clients, p.servers, std::nullopt};
  double upper;
  if (budget < static_cast<int>(cands.servers.size())) {
    OneCoverProblem budgeted{p.clients, p.servers, budget};
    upper = cover_bounded_greedy(inst, budgeted).cost(inst.alpha());
  } else {
    upper = cover_greedy(inst, unbudgeted).cost(inst.alpha());
  }
  ExactSearch search(inst, cands, budget, upper);
  search.dfs(0, 0, 0, 0.0);
  if (search.best_cost == kInf)
    throw_infeasible("no feasible cover within the server budget");
  for (size_t i = 0; i < search.best.size(); ++i)
    if (search.best[i].used) out.set(cands.servers[i].server, search.best[i].radius);
  return out;
}

}  // namespace

RadiusAssignment cover_exact(const MetricInstance& inst, const OneCoverProblem& p,
                             const ExactGuard& guard) {
  if (p.budget) throw_input("budget", "cover_exact does not take a budget");
  return run_exact(inst, p, std::numeric_limits<int>::max(), guard);
}

RadiusAssignment cover_bounded_exact(const MetricInstance& inst, const OneCoverProblem& p,
                                     const ExactGuard& guard) {
  if (!p.budget) throw_input("budget", "cover_bounded requires a budget");
  return run_exact(inst, p, *p.budget, guard);
}

RadiusAssignment cover_bounded_greedy(const MetricInstance& inst, const OneCoverProblem& p) {
  if (!p.budget) throw_input("budget", "cover_bounded requires a budget");
  check_problem(inst, p);
  OneCoverProblem base{p.clients, p.servers, std::nullopt};
  RadiusAssignment r = cover_greedy(inst, base);
  const int target = *p.budget;
  if (r.support_size() <= target) return r;

  const double alpha = inst.alpha();
  auto clients = sorted_unique(p.clients);
  struct MergedBall {
    int server;
    double radius;
    std::vector<int> points;
  };
  std::vector<MergedBall> balls;
  for (const auto& [s, radius] : r.entries()) {
    MergedBall b{s, radius, {}};
    for (int c : clients)
      if (inst.dist_cs(c, s) <= radius) b.points.push_back(c);
    balls.push_back(std::move(b));
  }

  while (static_cast<int>(balls.size()) > target) {
    double best_delta = kInf;
    double best_radius = kInf;
    size_t best_keep = 0, best_drop = 0;
    for (size_t a = 0; a < balls.size(); ++a)
      for (size_t b = a + 1; b < balls.size(); ++b)
        for (int side = 0; side < 2; ++side) {
          size_t keep = side == 0 ? a : b;
          size_t drop = side == 0 ? b : a;
          double radius = balls[keep].radius;
          for (int c : balls[a].points) radius = std::max(radius, inst.dist_cs(c, balls[keep].server));
          for (int c : balls[b].points) radius = std::max(radius, inst.dist_cs(c, balls[keep].server));
          double delta = std::pow(radius, alpha) - std::pow(balls[a].radius, alpha) -
                         std::pow(balls[b].radius, alpha);
          bool better = delta < best_delta ||
                        (delta == best_delta &&
                         (radius < best_radius ||
                          (radius == best_radius &&
                           (balls[keep].server < balls[best_keep].server ||
                            (balls[keep].server == balls[best_keep].server &&
                             balls[drop].server < balls[best_drop].server)))));
          if (better) {
            best_delta = delta;
            best_radius = radius;
            best_keep = keep;
            best_drop = drop;
          }
        }
    auto& keep = balls[best_keep];
    auto& drop = balls[best_drop];
    keep.radius = best_radius;
    keep.points.insert(keep.points.end(), drop.points.begin(), drop.points.end());
    std::sort(keep.points.begin(), keep.points.end());
    keep.points.erase(std::unique(keep.points.begin(), keep.points.end()), keep.points.end());
    balls.erase(balls.begin() + static_cast<long>(best_drop));
  }

  RadiusAssignment out;
  for (const auto& b : balls) out.raise(b.server, b.radius);
  return out;
}

RadiusAssignment cover(const MetricInstance& inst, const OneCoverProblem& p, Subroutine sub,
                       const ExactGuard& guard) {
  if (p.budget)
    return sub == Subroutine::Exact ? cover_bounded_exact(inst, p, guard)
                                    : cover_bounded_greedy(inst, p);
  return sub == Subroutine::Exact ? cover_exact(inst, p, guard) : cover_greedy(inst, p);
}

}  // namespace mmc
