// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "gatebound/expsim.hpp"
#include "gatebound/sampling.hpp"

using namespace gatebound;

static void BM_PauliExpansion(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = channels::cnz_unitary(n);
  for (auto _ : state) {
    auto exp = sampling::pauli_expansion(u);
    benchmark::DoNotOptimize(exp);
  }
}
BENCHMARK(BM_PauliExpansion)->DenseRange(1, 3);

static void BM_McEstimateNoiseless(benchmark::State& state) {
  const ComplexMatrix u = channels::cnz_unitary(3);
  const channels::ChoiMatrix chi =
      channels::depolarizing(channels::choi_of_unitary(u), 0.2);
  const double eps = 1.0 / std::sqrt(0.1 * static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto est = sampling::mc_estimate(chi, u, eps, 0.9, seed++);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_McEstimateNoiseless)->Range(1 << 10, 1 << 16);

static void BM_PoissonSampling(benchmark::State& state) {
  const double mean = static_cast<double>(state.range(0));
  rng::Pcg32 gen = rng::derive_stream(1, {2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen.poisson(mean));
  }
}
BENCHMARK(BM_PoissonSampling)->Arg(5)->Arg(50)->Arg(5000);

static void BM_SimulateCounts(benchmark::State& state) {
  const ComplexMatrix u = channels::cnz_unitary(3);
  const channels::ChoiMatrix chi =
      channels::depolarizing(channels::choi_of_unitary(u), 0.1);
  const probes::ProbeBasis basis = probes::probe_basis(3, 1);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto table = expsim::simulate_counts(chi, u, basis, 66000.0, seed++);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_SimulateCounts);

BENCHMARK_MAIN();
