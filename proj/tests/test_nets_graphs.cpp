#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "mmc/graphs.hpp"

using namespace mmc;

TEST_CASE("intersection graph on F1") {
  auto f1 = fixtures::f1();
  auto idx = build_neighborhood_index(f1);

  auto g2 = build_gi(f1, idx, 2);
  CHECK(g2.has_edge(0, 1));  // both 2-neighborhoods are {y1, y2}
  CHECK(g2.edge_count() == 1);

  auto g1 = build_gi(f1, idx, 1);
  CHECK_FALSE(g1.has_edge(0, 1));
  CHECK(g1.edge_count() == 0);

  CHECK_THROWS_AS(build_gi(f1, idx, 0), Error);
  CHECK_THROWS_AS(build_gi(f1, idx, 3), Error);
}

TEST_CASE("level graphs nest upward") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 6, 7);
    auto idx = build_neighborhood_index(inst);
    for (int i = 1; i < inst.num_servers(); ++i) {
      auto gi = build_gi(inst, idx, i);
      auto gj = build_gi(inst, idx, i + 1);
      CHECK(gi.subgraph_of(gj));
    }
  }
}

TEST_CASE("threatens on F4") {
  auto f1 = fixtures::f1();
  auto idx = build_neighborhood_index(f1);
  auto dem = fixtures::f4_demands();

  CHECK(threatens(idx, dem, 1, 0));        // x2 threatens x1
  CHECK_FALSE(threatens(idx, dem, 0, 1));  // demand inequality fails

  DemandProfile equal({2, 2});
  CHECK_FALSE(threatens(idx, equal, 0, 1));
  CHECK_FALSE(threatens(idx, equal, 1, 0));
}

TEST_CASE("client filtering") {
  auto f1 = fixtures::f1();
  auto idx = build_neighborhood_index(f1);

  auto filtered = filter_clients(idx, fixtures::f4_demands());
  CHECK(filtered.kept == std::vector<int>{0});
  REQUIRE(filtered.representative.count(1) == 1);
  CHECK(filtered.representative.at(1) == 0);

  auto uniform = filter_clients(idx, DemandProfile::uniform(2, 2));
  CHECK(uniform.kept == std::vector<int>{0, 1});

  auto single_inst = fixtures::f0();
  auto single_idx = build_neighborhood_index(single_inst);
  auto single = filter_clients(single_idx, DemandProfile::uniform(2, 1));
  CHECK(single.kept == std::vector<int>{0});
}

TEST_CASE("filtering bullets hold on random demand profiles") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 6, 8);
    auto idx = build_neighborhood_index(inst);
    auto dem = fixtures::random_demands(rng, inst, 1, 8);
    auto filtered = filter_clients(idx, dem);
    for (int kept : filtered.kept)
      for (int other : filtered.kept)
        CHECK_FALSE(threatens(idx, dem, kept, other));
    for (int c = 0; c < inst.num_clients(); ++c) {
      if (filtered.is_kept(c)) continue;
      REQUIRE(filtered.representative.count(c) == 1);
      int rep = filtered.representative.at(c);
      CHECK(filtered.is_kept(rep));
      CHECK(threatens(idx, dem, c, rep));
    }
  }
}

TEST_CASE("demand-gated graphs on F4") {
  auto f1 = fixtures::f1();
  auto idx = build_neighborhood_index(f1);
  auto dem = fixtures::f4_demands();
  auto filtered = filter_clients(idx, dem);

  auto h1 = build_hi(f1, idx, dem, filtered, 1);
  CHECK(h1.vertices == std::vector<int>{0});
  CHECK(h1.edge_count() == 0);

  auto h2 = build_hi(f1, idx, dem, filtered, 2);
  CHECK(h2.vertices == std::vector<int>{0});
  CHECK(h2.edge_count() == 0);  // 2 > ceil(kappa(x1)/2) isolates x1
}

TEST_CASE("uniform demands make the gated graph match the plain one") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 5, 6);
    auto idx = build_neighborhood_index(inst);
    int k = 1 + static_cast<int>(rng() % inst.num_servers());
    auto dem = DemandProfile::uniform(k, inst.num_clients());
    auto filtered = filter_clients(idx, dem);
    CHECK(filtered.kept.size() == static_cast<size_t>(inst.num_clients()));
    for (int i = 1; i <= (k + 1) / 2; ++i) {
      // at gated level i the edge rule reduces to intersecting (k-i+1)-neighborhoods
      auto hi = build_hi(inst, idx, dem, filtered, i);
      auto gi = build_gi(inst, idx, k - (i - 1));
      CHECK(hi.subgraph_of(gi));
      CHECK(gi.subgraph_of(hi));
    }
  }
}

TEST_CASE("net of a five-vertex path") {
  std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  auto p5 = make_graph(1, 5, {0, 1, 2, 3, 4}, edges);
  auto h = compute_net_hierarchy({p5});
  CHECK(h.nets.front() == std::vector<int>{0, 3});
  std::string why;
  CHECK(check_three_net(p5, h.nets.front(), &why));
}

TEST_CASE("net hierarchy on F1 levels 2 then 1") {
  auto f1 = fixtures::f1();
  auto idx = build_neighborhood_index(f1);
  auto h = compute_net_hierarchy({build_gi(f1, idx, 2), build_gi(f1, idx, 1)});
  CHECK(h.levels == std::vector<int>{2, 1});
  CHECK(h.nets[0] == std::vector<int>{0});
  CHECK(h.nets[1] == std::vector<int>{0, 1});
  CHECK(h.threshold.at(0) == 2);
  CHECK(h.threshold.at(1) == 1);
}

TEST_CASE("single-vertex graph nets itself") {
  auto g = make_graph(1, 1, {0}, {});
  auto h = compute_net_hierarchy({g});
  CHECK(h.nets.front() == std::vector<int>{0});
}

TEST_CASE("hierarchy rejects non-nested input") {
  auto loose = make_graph(2, 3, {0, 1, 2}, {});
  auto tight = make_graph(1, 3, {0, 1, 2}, {{0, 1}});
  CHECK_THROWS_AS(compute_net_hierarchy({loose, tight}), Error);
}

TEST_CASE("hierarchies are sound 3-nets with disjoint net neighborhoods") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = fixtures::random_euclidean(rng, 7, 9);
    auto idx = build_neighborhood_index(inst);
    int k = 2 + static_cast<int>(rng() % (inst.num_servers() - 1));
    int l = (k + 1) / 2;
    std::vector<IntersectionGraph> graphs;
    for (int i = k; i >= l; --i) graphs.push_back(build_gi(inst, idx, i));
    auto h = compute_net_hierarchy(graphs);

    for (size_t j = 0; j < graphs.size(); ++j) {
      std::string why;
      CHECK_MESSAGE(check_three_net(graphs[j], h.nets[j], &why), why);
      if (j + 1 < graphs.size())
        CHECK(std::includes(h.nets[j + 1].begin(), h.nets[j + 1].end(), h.nets[j].begin(),
                            h.nets[j].end()));

      // net clients have pairwise disjoint level neighborhoods, and any other
      // client's neighborhood meets at most one of them
      const int level = graphs[j].level;
      const auto& net = h.nets[j];
      for (size_t a = 0; a < net.size(); ++a)
        for (size_t b = a + 1; b < net.size(); ++b)
          CHECK_FALSE(idx.neighborhoods_intersect(net[a], level, net[b], level));
      for (int c = 0; c < inst.num_clients(); ++c) {
        if (std::binary_search(net.begin(), net.end(), c)) continue;
        int meets = 0;
        for (int v : net)
          if (idx.neighborhoods_intersect(c, level, v, level)) ++meets;
        CHECK(meets <= 1);
      }
    }
  }
}
