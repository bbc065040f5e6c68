#include <benchmark/benchmark.h>

#include <abelaut/constructions.hpp>
#include <abelaut/rng.hpp>

using namespace abelaut;

namespace {

const PcPresentation& zurek_pres() {
  static const PcPresentation pres = [] {
    TatSearchParams params{FieldPrime(3)};
    params.n = 4;
    params.seed = 7;
    params.centralizer.workers = 2;
    auto outcome = search_tat(params);
    return assemble_zurek(*outcome.tat);
  }();
  return pres;
}

void BM_collection_multiply(benchmark::State& state) {
  const PcPresentation& pres = zurek_pres();
  DeterministicRng rng(9);
  const GroupElement g = random_element(pres, rng);
  const GroupElement h = random_element(pres, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(pres, g, h));
  }
}
BENCHMARK(BM_collection_multiply);

void BM_element_order(benchmark::State& state) {
  const PcPresentation& pres = zurek_pres();
  DeterministicRng rng(10);
  const GroupElement g = random_element(pres, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(element_order_exponent(pres, g));
  }
}
BENCHMARK(BM_element_order);

void BM_center_computation(benchmark::State& state) {
  const PcPresentation& pres = zurek_pres();
  for (auto _ : state) {
    benchmark::DoNotOptimize(center(pres).order_exponent(pres));
  }
}
BENCHMARK(BM_center_computation);

}  // namespace
