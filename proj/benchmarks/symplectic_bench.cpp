#include <benchmark/benchmark.h>

#include <random>

#include "etale/symplectic.hpp"

namespace {

void BM_AdaptBasis(benchmark::State& state) {
  const int g = static_cast<int>(state.range(0));
  const std::int64_t n = 9;
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(0, n - 1);
  std::vector<std::int64_t> entries(static_cast<std::size_t>(2 * g));
  for (auto& e : entries) e = dist(rng);
  entries[1] = 1;
  const etale::ModVector delta(etale::factorize(n), entries);
  for (auto _ : state) benchmark::DoNotOptimize(etale::adapt_basis(delta, g));
}
BENCHMARK(BM_AdaptBasis)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

}  // namespace
