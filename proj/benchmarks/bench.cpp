// Microbenchmarks for the hot paths: exact solvers, reductions, sampling,
// the hybrid loop, and dense gap scans.

#include <benchmark/benchmark.h>

#include "hbb/branch_bound.hpp"
#include "hbb/hybrid.hpp"
#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"
#include "hbb/samplers.hpp"
#include "hbb/spectrum.hpp"

namespace {

void BM_KpBbToy(benchmark::State& state) {
  const hbb::KpInstance inst = hbb::kp_toy(25, 10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::kp_bb(inst).best.objective);
}
BENCHMARK(BM_KpBbToy)->Unit(benchmark::kMillisecond);

void BM_TspBbToy(benchmark::State& state) {
  const hbb::TspInstance inst = hbb::tsp_toy(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::tsp_bb(inst).best.objective);
}
BENCHMARK(BM_TspBbToy)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_KpQuboBuild(benchmark::State& state) {
  const hbb::KpInstance inst = hbb::kp_toy(25, 10.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::kp_qubo(inst).num_bits);
}
BENCHMARK(BM_KpQuboBuild)->Unit(benchmark::kMicrosecond);

void BM_TspQuboBuild(benchmark::State& state) {
  const hbb::TspInstance inst = hbb::tsp_toy(8);
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::tsp_qubo(inst).num_bits);
}
BENCHMARK(BM_TspQuboBuild)->Unit(benchmark::kMicrosecond);

void BM_ExactEnumeration(benchmark::State& state) {
  // 16-bit knapsack model, 65536 evaluations per pass.
  const hbb::QuboModel q = hbb::kp_qubo(hbb::kp_toy(13, 7.0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::sample_exact(q).total_reads);
}
BENCHMARK(BM_ExactEnumeration)->Unit(benchmark::kMillisecond);

void BM_SaSweeps(benchmark::State& state) {
  const hbb::QuboModel q = hbb::kp_qubo(hbb::kp_toy(12, 6.0));
  hbb::SamplerParams params;
  params.num_reads = 100;
  params.num_sweeps = static_cast<int>(state.range(0));
  params.seed = 1;
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::sample_sa(q, params).total_reads);
}
BENCHMARK(BM_SaSweeps)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_HybridKp(benchmark::State& state) {
  const hbb::KpInstance inst = hbb::kp_toy(12, 6.0);
  hbb::HybridConfig cfg;
  cfg.max_qubits = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(hbb::hybrid_kp(inst, cfg).best.objective);
}
BENCHMARK(BM_HybridKp)->Arg(8)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

void BM_GapScan(benchmark::State& state) {
  const hbb::IsingModel m =
      hbb::qubo_to_ising(hbb::kp_qubo(hbb::kp_toy(6, 3.0)));  // 9 spins
  const hbb::Schedule sched = hbb::Schedule::linear();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        hbb::gap_scan(m, sched, static_cast<int>(state.range(0))).min_gap);
}
BENCHMARK(BM_GapScan)->Arg(21)->Arg(51)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
