#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmc/one_cover.hpp"
#include "mmc/oracle.hpp"

using namespace mmc;

TEST_CASE("optimum on the fixtures") {
  auto f1 = fixtures::f1();
  auto dem2 = DemandProfile::uniform(2, 2);
  CHECK(fixtures::naive_exact_mmc(f1, dem2) == doctest::Approx(2.0));
  auto res = exact_mmc(f1, dem2);
  CHECK(res.cost == doctest::Approx(2.0));
  CHECK(is_feasible(f1, dem2, res.assignment));

  auto dem4 = fixtures::f4_demands();
  CHECK(fixtures::naive_exact_mmc(f1, dem4) == doctest::Approx(1.0));
  auto res4 = exact_mmc(f1, dem4);
  CHECK(res4.cost == doctest::Approx(1.0));
  CHECK(res4.assignment.radius(1) == 1.0);

  auto f0 = fixtures::f0();
  auto res0 = exact_mmc(f0, DemandProfile::uniform(3, 1));
  CHECK(res0.cost == 0.0);
}

TEST_CASE("budgeted optimum on the fixtures") {
  auto f1 = fixtures::f1();
  CHECK(fixtures::naive_exact_tmmc(f1, 2, 2) == doctest::Approx(2.0));
  auto res = exact_tmmc(f1, 2, 2);
  CHECK(res.cost == doctest::Approx(2.0));
  CHECK(res.assignment.support_size() <= 2);

  auto f2 = fixtures::f2();
  CHECK(fixtures::naive_exact_tmmc(f2, 1, 1) == doctest::Approx(4.0));
  auto squeezed = exact_tmmc(f2, 1, 1);
  CHECK(squeezed.cost == doctest::Approx(4.0));
  CHECK(squeezed.assignment.support_size() == 1);
  CHECK(squeezed.assignment.radius(1) == 4.0);

  CHECK_THROWS_AS(exact_tmmc(f1, 2, 1), Error);  // t < k
}

TEST_CASE("slack budget reduces to the unconstrained 1-cover") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 4, 5);
    auto res = exact_tmmc(inst, 1, inst.num_servers());
    std::vector<int> clients(inst.num_clients()), servers(inst.num_servers());
    std::iota(clients.begin(), clients.end(), 0);
    std::iota(servers.begin(), servers.end(), 0);
    auto cover = cover_exact(inst, {clients, servers, std::nullopt});
    CHECK(res.cost == doctest::Approx(cover.cost(inst.alpha())).epsilon(1e-12));
  }
}

TEST_CASE("agreement with the pruning-free enumerator on 50 micro-instances") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 50; ++trial) {
    int nx = 1 + static_cast<int>(rng() % 3);
    int ny = 2 + static_cast<int>(rng() % 3);
    auto inst = fixtures::random_euclidean(rng, nx, ny, trial % 2 ? 2.0 : 1.0);
    auto dem = fixtures::random_demands(rng, inst, 1, ny);

    RadiusAssignment naive_best;
    double naive_cost = fixtures::naive_exact_mmc(inst, dem, &naive_best);
    auto res = exact_mmc(inst, dem);
    CHECK(res.cost == doctest::Approx(naive_cost).epsilon(1e-12));
    CHECK(res.assignment == naive_best);
    CHECK(is_feasible(inst, dem, res.assignment));

    int k = dem.kmax();
    int t = k + static_cast<int>(rng() % (ny - k + 1));
    RadiusAssignment naive_tmmc_best;
    double naive_tmmc_cost = fixtures::naive_exact_tmmc(inst, k, t, &naive_tmmc_best);
    auto tres = exact_tmmc(inst, k, t, {});
    CHECK(tres.cost == doctest::Approx(naive_tmmc_cost).epsilon(1e-12));
    CHECK(tres.assignment == naive_tmmc_best);
  }
}

TEST_CASE("deterministic across repeated runs") {
  std::mt19937_64 rng(79);
  auto inst = fixtures::random_euclidean(rng, 4, 6);
  auto dem = fixtures::random_demands(rng, inst, 1, 4);
  auto first = exact_mmc(inst, dem);
  auto second = exact_mmc(inst, dem);
  CHECK(first.cost == second.cost);
  CHECK(first.assignment == second.assignment);
  CHECK(first.nodes == second.nodes);
}

TEST_CASE("node guard refuses oversized enumerations up front") {
  std::mt19937_64 rng(83);
  auto inst = fixtures::random_euclidean(rng, 6, 8);
  OracleGuard tiny{1000};
  CHECK_THROWS_AS(exact_mmc(inst, DemandProfile::uniform(2, 6), tiny), Error);
  CHECK_THROWS_AS(exact_tmmc(inst, 2, 4, tiny), Error);
  try {
    exact_mmc(inst, DemandProfile::uniform(2, 6), tiny);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(e.code() == "guard");
  }
}

TEST_CASE("shrinking a ball onto its farthest covered client is free") {
  // the structural fact behind the candidate-radius discretization
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 5, 5);
    auto dem = fixtures::random_demands(rng, inst, 1, 3);
    std::uniform_real_distribution<double> radius(0.0, 2.0);
    RadiusAssignment r;
    for (int s = 0; s < inst.num_servers(); ++s) r.set(s, radius(rng));
    if (!is_feasible(inst, dem, r)) continue;

    RadiusAssignment shrunk;
    for (int s = 0; s < inst.num_servers(); ++s) {
      double farthest = 0.0;
      for (int c = 0; c < inst.num_clients(); ++c)
        if (inst.dist_cs(c, s) <= r.radius(s)) farthest = std::max(farthest, inst.dist_cs(c, s));
      shrunk.set(s, farthest);
    }
    CHECK(is_feasible(inst, dem, shrunk));
    CHECK(shrunk.cost(inst.alpha()) <= r.cost(inst.alpha()) + 1e-12);
  }
}
