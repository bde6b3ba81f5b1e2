#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmc/one_cover.hpp"

using namespace mmc;

namespace {

bool covers_all(const MetricInstance& inst, const std::vector<int>& clients,
                const RadiusAssignment& r) {
  for (int c : clients)
    if (!support_covers(inst, r, c)) return false;
  return true;
}

bool uses_only(const RadiusAssignment& r, const std::vector<int>& servers) {
  for (const auto& [s, radius] : r.entries())
    if (std::find(servers.begin(), servers.end(), s) == servers.end()) return false;
  return true;
}

// Independent reference: plain enumeration over per-server options (absent or
// a candidate radius), no pruning, first optimum in lexicographic order kept.
void naive_cover_rec(const MetricInstance& inst, const std::vector<int>& clients,
                     const std::vector<int>& servers, size_t pos, RadiusAssignment& current,
                     double cost, int budget, double& best_cost, RadiusAssignment& best) {
  if (pos == servers.size()) {
    if (!covers_all(inst, clients, current)) return;
    if (cost < best_cost) {
      best_cost = cost;
      best = current;
    }
    return;
  }
  naive_cover_rec(inst, clients, servers, pos + 1, current, cost, budget, best_cost, best);
  if (budget == 0) return;
  std::set<double> radii;
  for (int c : clients) radii.insert(inst.dist_cs(c, servers[pos]));
  for (double r : radii) {
    current.set(servers[pos], r);
    naive_cover_rec(inst, clients, servers, pos + 1, current, cost + std::pow(r, inst.alpha()),
                    budget - 1, best_cost, best);
  }
  current.erase(servers[pos]);
}

double naive_cover(const MetricInstance& inst, const OneCoverProblem& p,
                   RadiusAssignment* assignment = nullptr) {
  double best_cost = std::numeric_limits<double>::infinity();
  RadiusAssignment best, current;
  int budget = p.budget ? *p.budget : static_cast<int>(p.servers.size());
  naive_cover_rec(inst, p.clients, p.servers, 0, current, 0.0, budget, best_cost, best);
  if (assignment) *assignment = best;
  return best_cost;
}

}  // namespace

TEST_CASE("candidate balls are nested concentric families") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 6, 5);
    OneCoverProblem p{{0, 1, 2, 3, 4, 5}, {0, 1, 2, 3, 4}, std::nullopt};
    auto cands = build_candidate_balls(inst, p);
    for (const auto& e : cands.servers) {
      CHECK(e.radii.front() == 0.0);
      for (size_t j = 1; j < e.radii.size(); ++j) {
        CHECK(e.radii[j - 1] < e.radii[j]);
        CHECK((e.masks[j - 1] & ~e.masks[j]) == 0);  // coverage grows with radius
      }
      CHECK(e.masks.back() == cands.full_mask);
    }
  }
}

TEST_CASE("greedy cover on the fixtures") {
  auto f1 = fixtures::f1();
  auto r = cover_greedy(f1, {{0, 1}, {1}, std::nullopt});
  CHECK(r.radius(1) == 1.0);
  CHECK(r.cost(1.0) == doctest::Approx(1.0));

  auto co = cover_greedy(f1, {{1}, {1}, std::nullopt});
  CHECK(co.has(1));
  CHECK(co.radius(1) == 0.0);
  CHECK(co.cost(1.0) == 0.0);

  auto f2 = fixtures::f2();
  auto wide = cover_greedy(f2, {{0, 1, 2}, {1}, std::nullopt});
  CHECK(wide.radius(1) == 4.0);

  CHECK_THROWS_AS(cover_greedy(f1, {{0, 1}, {}, std::nullopt}), Error);
  CHECK(cover_greedy(f1, {{}, {0, 1}, std::nullopt}).empty());
}

TEST_CASE("exact cover on the fixtures") {
  auto f1 = fixtures::f1();
  // both clients sit on servers, so two radius-0 balls cover everything
  OneCoverProblem both{{0, 1}, {0, 1}, std::nullopt};
  CHECK(naive_cover(f1, both) == doctest::Approx(0.0));
  auto r = cover_exact(f1, both);
  CHECK(r.cost(1.0) == doctest::Approx(0.0));
  CHECK(covers_all(f1, {0, 1}, r));

  auto co = cover_exact(f1, {{1}, {1}, std::nullopt});
  CHECK(co.cost(1.0) == 0.0);

  auto f2 = fixtures::f2();
  OneCoverProblem three{{0, 1, 2}, {0, 1, 2}, std::nullopt};
  double reference = naive_cover(f2, three);
  CHECK(reference == doctest::Approx(2.0));  // confirmed before freezing: radii (1, 0, 1)
  auto exact = cover_exact(f2, three);
  CHECK(exact.cost(1.0) == doctest::Approx(2.0));
  CHECK(exact.radius(0) == 1.0);
  CHECK(exact.has(1));
  CHECK(exact.radius(1) == 0.0);
  CHECK(exact.radius(2) == 1.0);
}

TEST_CASE("exact size guard refuses and can be overridden") {
  std::mt19937_64 rng(53);
  auto inst = fixtures::random_euclidean(rng, 3, 4);
  OneCoverProblem p{{0, 1, 2}, {0, 1, 2, 3}, std::nullopt};
  ExactGuard tiny{2, 2, false};
  CHECK_THROWS_AS(cover_exact(inst, p, tiny), Error);
  ExactGuard overridden{2, 2, true};
  CHECK_NOTHROW(cover_exact(inst, p, overridden));
}

TEST_CASE("bounded cover on the fixtures") {
  auto f1 = fixtures::f1();
  OneCoverProblem one{{0, 1}, {0, 1}, 1};
  CHECK(cover_bounded_exact(f1, one).cost(1.0) == doctest::Approx(1.0));
  auto greedy_one = cover_bounded_greedy(f1, one);
  CHECK(greedy_one.support_size() <= 1);
  CHECK(covers_all(f1, {0, 1}, greedy_one));

  auto f2 = fixtures::f2();
  OneCoverProblem squeeze{{0, 1, 2}, {0, 1, 2, 3}, 1};
  double reference = naive_cover(f2, squeeze);
  CHECK(reference == doctest::Approx(4.0));  // single server y2 at radius 4
  CHECK(cover_bounded_exact(f2, squeeze).cost(1.0) == doctest::Approx(4.0));
  auto merged = cover_bounded_greedy(f2, squeeze);
  CHECK(merged.support_size() <= 1);
  CHECK(covers_all(f2, {0, 1, 2}, merged));
}

TEST_CASE("slack budgets reproduce the unbudgeted covers") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 5, 5);
    OneCoverProblem base{{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, std::nullopt};
    OneCoverProblem slack = base;
    slack.budget = 5;
    CHECK(cover_bounded_exact(inst, slack) == cover_exact(inst, base));
    CHECK(cover_bounded_greedy(inst, slack) == cover_greedy(inst, base));
  }
}

TEST_CASE("covers are feasible, stay inside the server set, honor budgets") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 6, 6, trial % 2 ? 2.0 : 1.0);
    std::vector<int> clients, servers;
    for (int c = 0; c < inst.num_clients(); ++c)
      if (rng() % 2) clients.push_back(c);
    for (int s = 0; s < inst.num_servers(); ++s)
      if (rng() % 2) servers.push_back(s);
    if (servers.empty()) servers.push_back(static_cast<int>(rng() % inst.num_servers()));
    OneCoverProblem p{clients, servers, std::nullopt};

    auto greedy = cover_greedy(inst, p);
    auto exact = cover_exact(inst, p);
    CHECK(covers_all(inst, clients, greedy));
    CHECK(covers_all(inst, clients, exact));
    CHECK(uses_only(greedy, servers));
    CHECK(uses_only(exact, servers));
    CHECK(exact.cost(inst.alpha()) <= greedy.cost(inst.alpha()) + 1e-12);

    if (!clients.empty()) {
      int budget = 1 + static_cast<int>(rng() % servers.size());
      OneCoverProblem bounded = p;
      bounded.budget = budget;
      auto be = cover_bounded_exact(inst, bounded);
      auto bg = cover_bounded_greedy(inst, bounded);
      for (const auto& r : {be, bg}) {
        CHECK(covers_all(inst, clients, r));
        CHECK(uses_only(r, servers));
        CHECK(r.support_size() <= budget);
      }
      if (budget < static_cast<int>(servers.size())) {
        OneCoverProblem wider = p;
        wider.budget = budget + 1;
        CHECK(cover_bounded_exact(inst, wider).cost(inst.alpha()) <=
              be.cost(inst.alpha()) + 1e-12);
      }
    }
  }
}

TEST_CASE("exact backend agrees with the pruning-free reference on 100 micro-instances") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    int nx = 1 + static_cast<int>(rng() % 4);
    int ny = 1 + static_cast<int>(rng() % 4);
    auto inst = fixtures::random_euclidean(rng, nx, ny, trial % 2 ? 2.0 : 1.0);
    std::vector<int> clients(nx), servers(ny);
    std::iota(clients.begin(), clients.end(), 0);
    std::iota(servers.begin(), servers.end(), 0);
    OneCoverProblem p{clients, servers, std::nullopt};

    RadiusAssignment reference;
    double reference_cost = naive_cover(inst, p, &reference);
    auto exact = cover_exact(inst, p);
    CHECK(exact.cost(inst.alpha()) == doctest::Approx(reference_cost).epsilon(1e-12));
    CHECK(exact == reference);

    int budget = 1 + static_cast<int>(rng() % ny);
    OneCoverProblem bounded = p;
    bounded.budget = budget;
    RadiusAssignment bounded_reference;
    double bounded_cost = naive_cover(inst, bounded, &bounded_reference);
    auto be = cover_bounded_exact(inst, bounded);
    CHECK(be.cost(inst.alpha()) == doctest::Approx(bounded_cost).epsilon(1e-12));
    CHECK(be == bounded_reference);
  }
}
