// OpenMP grid kernels against the serial reference loops.
// Run with OMP_NUM_THREADS set to compare thread counts.

#include "bvms/chambolle_pock.hpp"
#include "bvms/field.hpp"
#include "bvms/reference.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

bvms::ScalarField random_field(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  bvms::ScalarField f(n, n);
  for (auto& x : f.values()) x = d(rng);
  return f;
}

bvms::VectorField random_vfield(std::size_t n, unsigned seed) {
  return {random_field(n, seed), random_field(n, seed + 1)};
}

void BM_GradParallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto u = random_field(n, 1);
  bvms::VectorField out;
  for (auto _ : st) {
    bvms::grad_into(u, 1.0 / n, out);
    benchmark::DoNotOptimize(out.c1.values().data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_GradReference(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto u = random_field(n, 1);
  for (auto _ : st) benchmark::DoNotOptimize(bvms::reference::grad(u, 1.0 / n));
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_DivParallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto q = random_vfield(n, 2);
  bvms::ScalarField out;
  for (auto _ : st) {
    bvms::div_into(q, 1.0 / n, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_DivReference(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto q = random_vfield(n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(bvms::reference::div(q, 1.0 / n));
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_Norm1Parallel(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto q = random_vfield(n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(bvms::norm1_of_pointwise(q));
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_Norm1Reference(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto q = random_vfield(n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(bvms::reference::norm1_of_pointwise(q));
  st.SetItemsProcessed(st.iterations() * n * n);
}

void BM_InnerIterations(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  bvms::InnerProblem prob;
  prob.vbar = random_field(n, 4);
  prob.s = 10.0;
  prob.params.epsilon = 1e-3;
  prob.params.h = 1.0 / n;
  bvms::InnerOptions opts;
  opts.tol2 = 1e-300;  // fixed iteration count
  opts.max_inner = 20;
  opts.gap_every = 10;
  for (auto _ : st) {
    auto state = bvms::PdState::start_from(prob.vbar);
    benchmark::DoNotOptimize(bvms::run_inner(prob, state, opts).gap);
  }
  st.SetItemsProcessed(st.iterations() * opts.max_inner * n * n);
}

}  // namespace

BENCHMARK(BM_GradParallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_GradReference)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_DivParallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_DivReference)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_Norm1Parallel)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_Norm1Reference)->Arg(128)->Arg(512)->Arg(1024);
BENCHMARK(BM_InnerIterations)->Arg(128)->Arg(256);

BENCHMARK_MAIN();
