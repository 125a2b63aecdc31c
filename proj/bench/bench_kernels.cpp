#include <benchmark/benchmark.h>

#include "fgpd/builders.hpp"
#include "fgpd/kernels.hpp"

namespace {

using namespace fgpd;

// Pair(n) x S3: 6 n^2 arrows.
FiniteGroupoid block(std::size_t n) {
  return product_groupoid(make_pair_groupoid(n), make_symmetric_group3());
}

PrincipalBundle trivial_over(std::size_t n, std::size_t base) {
  auto const g = share(block(n));
  std::vector<Index> alpha(base);
  for (std::size_t m = 0; m < base; ++m) alpha[m] = static_cast<Index>(m % n);
  return trivial_bundle(g, base_names(base), alpha);
}

template <auto Kernel>
void associativity(benchmark::State& state) {
  auto const g = block(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(g));
  state.SetLabel(std::to_string(g.arrow_count()) + " arrows");
}

template <auto Kernel>
void division(benchmark::State& state) {
  auto const b = trivial_over(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(b));
  state.SetLabel(std::to_string(b.size()) + " points");
}

template <auto Kernel>
void ggt_candidates(benchmark::State& state) {
  auto const b = trivial_over(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(b, b));
  state.SetLabel(std::to_string(b.size()) + " points");
}

}  // namespace

BENCHMARK(associativity<kernels::serial::associativity_failures>)->Name("associativity/serial")->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(associativity<kernels::omp::associativity_failures>)->Name("associativity/omp")->Arg(2)->Arg(3)->Arg(4);
BENCHMARK(division<kernels::serial::division_table>)->Name("division/serial")->Arg(2)->Arg(4);
BENCHMARK(division<kernels::omp::division_table>)->Name("division/omp")->Arg(2)->Arg(4);
BENCHMARK(ggt_candidates<kernels::serial::ggt_fibre_candidates>)->Name("ggt_candidates/serial")->Arg(1)->Arg(2);
BENCHMARK(ggt_candidates<kernels::omp::ggt_fibre_candidates>)->Name("ggt_candidates/omp")->Arg(1)->Arg(2);

BENCHMARK_MAIN();
