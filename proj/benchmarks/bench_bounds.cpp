// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "gatebound/probes.hpp"

using namespace gatebound;

static void BM_RkOperator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = channels::cnz_unitary(n);
  const probes::ProbeBasis basis = probes::probe_basis(n, 1);
  for (auto _ : state) {
    auto rk = probes::r_k_operator(u, basis);
    benchmark::DoNotOptimize(rk);
  }
}
BENCHMARK(BM_RkOperator)->DenseRange(2, 5);

static void BM_ROperatorSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = channels::cnz_unitary(n);
  for (auto _ : state) {
    auto w = qmath::eigh_values(probes::r_operator(u, n));
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_ROperatorSpectrum)->DenseRange(2, 4);

static void BM_TTildeSpectrum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto spec = probes::t_tilde_spectrum(n);
    benchmark::DoNotOptimize(spec);
  }
}
BENCHMARK(BM_TTildeSpectrum)->DenseRange(2, 4);

static void BM_BoundReport(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ComplexMatrix u = channels::cnz_unitary(n);
  const channels::ChoiMatrix chi =
      channels::depolarizing(channels::choi_of_unitary(u), 0.2);
  for (auto _ : state) {
    auto rep = probes::bound_report(chi, u);
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(BM_BoundReport)->DenseRange(2, 4);
