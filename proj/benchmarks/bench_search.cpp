#include <benchmark/benchmark.h>

#include <abelaut/rng.hpp>
#include <abelaut/tat.hpp>

using namespace abelaut;

namespace {

TatCandidate random_candidate(std::uint32_t p, std::size_t n, std::uint64_t seed) {
  FieldPrime f(p);
  DeterministicRng rng(seed);
  FpMatrix fm(f, n, wedge_dim(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < wedge_dim(n); ++c) fm.set(r, c, rng.below(p));
  }
  return TatCandidate::make(f, n, QuotientSpace(f, n), fm);
}

// exhaustive decision over GL(3,3): the per-prefix linear solve dominates
void BM_centralizer_gl33(benchmark::State& state) {
  const TatCandidate t = random_candidate(3, 3, 5);
  CentralizerOptions opt;
  opt.enforce_preconditions = false;
  opt.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(centralizer(t, opt).count);
  }
}
BENCHMARK(BM_centralizer_gl33)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// the full verification pass the acceptance criteria time-bound
void BM_centralizer_gl43(benchmark::State& state) {
  const TatCandidate t = random_candidate(3, 4, 5);
  CentralizerOptions opt;
  opt.enforce_preconditions = false;
  opt.workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(centralizer(t, opt).count);
  }
}
BENCHMARK(BM_centralizer_gl43)->Arg(1)->Arg(2)->Arg(8)
    ->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
