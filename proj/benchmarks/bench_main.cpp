#include <benchmark/benchmark.h>

#include <random>

#include "mmc/io.hpp"
#include "mmc/oracle.hpp"
#include "mmc/solvers.hpp"

namespace {

mmc::MetricInstance random_instance(std::uint64_t seed, int nx, int ny, double alpha = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<std::string> clients, servers;
  std::vector<std::vector<double>> coords;
  for (int c = 0; c < nx; ++c) clients.push_back("x" + std::to_string(c));
  for (int s = 0; s < ny; ++s) servers.push_back("y" + std::to_string(s));
  for (int p = 0; p < nx + ny; ++p) coords.push_back({coord(rng), coord(rng)});
  return mmc::MetricInstance::from_euclidean(std::move(clients), std::move(servers),
                                             std::move(coords), alpha);
}

void BM_NeighborhoodIndex(benchmark::State& state) {
  auto inst = random_instance(1, static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mmc::build_neighborhood_index(inst));
}
BENCHMARK(BM_NeighborhoodIndex)->Arg(16)->Arg(64)->Arg(256);

void BM_PartitionUniform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto inst = random_instance(2, n, n + n / 2);
  auto idx = mmc::build_neighborhood_index(inst);
  const int k = std::max(1, n / 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(mmc::compute_server_subsets_uniform(inst, idx, k));
}
BENCHMARK(BM_PartitionUniform)->Arg(8)->Arg(16)->Arg(32);

void BM_PartitionNonuniform(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto inst = random_instance(3, n, n + n / 2);
  auto idx = mmc::build_neighborhood_index(inst);
  std::mt19937_64 rng(4);
  std::vector<int> demands;
  for (int c = 0; c < n; ++c) demands.push_back(1 + static_cast<int>(rng() % (n / 2 + 1)));
  mmc::DemandProfile dem(demands);
  for (auto _ : state)
    benchmark::DoNotOptimize(mmc::compute_server_subsets_nonuniform(inst, idx, dem));
}
BENCHMARK(BM_PartitionNonuniform)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto inst = random_instance(5, n, n);
  const int k = std::max(1, n / 3);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::solve_mmc(inst, k, mmc::Subroutine::Greedy));
}
BENCHMARK(BM_SolveGreedy)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveTmmcGreedy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto inst = random_instance(6, n, n);
  const int k = std::max(1, n / 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(mmc::solve_tmmc(inst, k, n, mmc::Subroutine::Greedy));
}
BENCHMARK(BM_SolveTmmcGreedy)->Arg(8)->Arg(16);

void BM_OracleMicro(benchmark::State& state) {
  auto inst = random_instance(7, 5, static_cast<int>(state.range(0)), 2.0);
  auto dem = mmc::DemandProfile::uniform(2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(mmc::exact_mmc(inst, dem));
}
BENCHMARK(BM_OracleMicro)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
