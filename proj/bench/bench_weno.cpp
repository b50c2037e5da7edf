#include <benchmark/benchmark.h>
#include <omp.h>

#include "airy/weno_fd.hpp"

using namespace airy;

namespace {

weno::ConservedGrid riemann_grid(int M) {
  weno::Config cfg;
  cfg.params.Q = 0.5;
  return weno::make_grid(-1.0, 1.0, M, 0.0, weno::initial_state(cfg));
}

void run_rhs(benchmark::State& state, weno::Kernel k) {
  const auto g = riemann_grid(static_cast<int>(state.range(0)));
  weno::Workspace ws;
  weno::RhsResult out;
  for (auto _ : state) {
    weno::semidiscrete_rhs(g, 1e-12, k, out, ws);
    benchmark::DoNotOptimize(out.deta.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = k == weno::Kernel::parallel ? omp_get_max_threads() : 1;
}

void BM_rhs_reference(benchmark::State& s) { run_rhs(s, weno::Kernel::reference); }
void BM_rhs_parallel(benchmark::State& s) { run_rhs(s, weno::Kernel::parallel); }

void BM_step(benchmark::State& state, weno::Kernel k) {
  auto g = riemann_grid(static_cast<int>(state.range(0)));
  weno::Stepper st(1e-12, k);
  const double h = 0.2 * g.delta;
  for (auto _ : state) st.step(g, h);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_rhs_reference)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK(BM_rhs_parallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);
BENCHMARK_CAPTURE(BM_step, reference, weno::Kernel::reference)->Arg(1 << 14);
BENCHMARK_CAPTURE(BM_step, parallel, weno::Kernel::parallel)->Arg(1 << 14);

BENCHMARK_MAIN();
