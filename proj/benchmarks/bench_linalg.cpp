#include <benchmark/benchmark.h>

#include <abelaut/gl_enum.hpp>
#include <abelaut/linalg.hpp>
#include <abelaut/rng.hpp>
#include <abelaut/wedge.hpp>

using namespace abelaut;

namespace {

FpMatrix random_matrix(FieldPrime f, std::size_t rows, std::size_t cols,
                       DeterministicRng& rng) {
  FpMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng.below(f.p()));
  }
  return m;
}

void BM_rref(benchmark::State& state) {
  FieldPrime f(3);
  DeterministicRng rng(1);
  const FpMatrix m = random_matrix(f, state.range(0), state.range(0) + 2, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rref(m));
  }
}
BENCHMARK(BM_rref)->Arg(4)->Arg(8)->Arg(16);

void BM_induced_map(benchmark::State& state) {
  FieldPrime f(3);
  DeterministicRng rng(2);
  const FpMatrix m = random_matrix(f, state.range(0), state.range(0), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(induced_map(m));
  }
}
BENCHMARK(BM_induced_map)->Arg(4)->Arg(6);

void BM_enumerate_gl23(benchmark::State& state) {
  FieldPrime f(3);
  for (auto _ : state) {
    std::size_t count = 0;
    enumerate_invertible(2, f, {1, 1}, [&](const FpMatrix&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_enumerate_gl23);

}  // namespace
