#include <benchmark/benchmark.h>

#include <random>

#include "fixtures.hpp"
#include "freesum/census.hpp"
#include "freesum/enumerate.hpp"
#include "freesum/stabbing.hpp"
#include "freesum/starballs.hpp"
#include "freesum/symmetry.hpp"
#include "freesum/webs.hpp"

using namespace freesum;

namespace {

std::vector<Triangulation> random_placings(std::size_t d, std::size_t n, std::size_t count) {
  std::mt19937 rng(17);
  std::vector<Triangulation> out;
  while (out.size() < count) {
    if (auto t = fixtures::random_triangulation(rng, d, n)) out.push_back(*t);
  }
  return out;
}

std::vector<Triangulation> all_of(const ConfigPtr& c) {
  EnumerateOptions o;
  o.max_dim = 4;
  o.max_points = 12;
  return brute_force_triangulations(c, o);
}

void BM_StabbingTree(benchmark::State& state) {
  const auto ts = random_placings(static_cast<std::size_t>(state.range(0)), 8, 8);
  for (auto _ : state) {
    for (const auto& t : ts)
      for (Simplex a : t.cells())
        for (Simplex b : t.cells())
          if (a != b) benchmark::DoNotOptimize(stabbing_compare_tree(t, a, b));
  }
}
BENCHMARK(BM_StabbingTree)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_StabbingLp(benchmark::State& state) {
  const auto ts = random_placings(static_cast<std::size_t>(state.range(0)), 8, 8);
  for (auto _ : state) {
    for (const auto& t : ts)
      for (Simplex a : t.cells())
        for (Simplex b : t.cells())
          if (a != b) benchmark::DoNotOptimize(stabbing_compare_lp(t, a, b));
  }
}
BENCHMARK(BM_StabbingLp)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_StarBalls(benchmark::State& state) {
  const auto all = all_of(dp(2));
  for (auto _ : state) {
    for (const auto& t : all) benchmark::DoNotOptimize(enumerate_star_balls(t).size());
  }
}
BENCHMARK(BM_StarBalls)->Unit(benchmark::kMillisecond);

void BM_WebsDp2(benchmark::State& state) {
  std::vector<SummandData> data;
  for (const auto& t : all_of(dp(2))) data.push_back(make_summand_data(t));
  for (auto _ : state) {
    std::uint64_t n = 0;
    for (const auto& p : data)
      for (const auto& q : data) n += count_proper_psum_webs(p, q);
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_WebsDp2)->Unit(benchmark::kMillisecond);

void BM_Automorphisms(benchmark::State& state) {
  const auto c = state.range(0) == 0 ? dp(4) : free_sum(dp(2), dp(4)).sum;
  for (auto _ : state) benchmark::DoNotOptimize(automorphism_group(*c).order());
}
BENCHMARK(BM_Automorphisms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumerateDp2(benchmark::State& state) {
  const auto c = dp(2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_triangulations(c).size());
}
BENCHMARK(BM_EnumerateDp2)->Unit(benchmark::kMillisecond);

void BM_Regularity(benchmark::State& state) {
  const auto ts = random_placings(3, 8, 10);
  for (auto _ : state) {
    for (const auto& t : ts) benchmark::DoNotOptimize(is_regular(t).regular);
  }
}
BENCHMARK(BM_Regularity)->Unit(benchmark::kMillisecond);

void BM_CensusDp2Dp2(benchmark::State& state) {
  const auto p = dp(2);
  const auto list = all_of(p);
  CensusOptions o;
  o.q_sum = false;
  o.all_conventions = false;
  for (auto _ : state) benchmark::DoNotOptimize(census(p, p, list, list, o).homomorphisms);
}
BENCHMARK(BM_CensusDp2Dp2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
