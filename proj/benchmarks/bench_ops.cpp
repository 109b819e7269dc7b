// Microbenchmarks for the inner-loop operations: residual evaluation, the
// matrix-free linearization, covariant differences, the winding census, and
// a full damped Gauss-Newton solve.  Run as
//   ./benchmarks/vortex_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "vortex/checks.hpp"
#include "vortex/covariant.hpp"
#include "vortex/rng.hpp"
#include "vortex/solver.hpp"
#include "vortex/vortex_map.hpp"

using namespace vortex;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Fixture {
  TorusGeometry g;
  Connection c;
  Section phi;

  explicit Fixture(int n) : g(build_torus(n, 8 * kPi)), c(base_connection(g, 1)) {
    Rng rng(1);
    phi.resize(g.sites());
    for (int s = 0; s < g.sites(); ++s) phi[s] = {0.5 * rng.normal(), 0.5 * rng.normal()};
    for (int l = 0; l < g.links(); ++l) c.alpha[l] = 0.05 * rng.normal();
  }
};

void bm_residual(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual(f.c, f.phi, 1.0).total_norm());
  }
  state.SetItemsProcessed(state.iterations() * f.g.sites());
}

void bm_dbar(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dbar(f.c, f.phi).sum());
  }
  state.SetItemsProcessed(state.iterations() * f.g.sites());
}

void bm_linearization_apply(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  Linearization lin(f.c, f.phi, 1.0);
  Rng rng(2);
  Eigen::VectorXd v(lin.cols());
  for (int i = 0; i < v.size(); ++i) v[i] = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lin.apply(v).norm());
  }
  state.SetItemsProcessed(state.iterations() * f.g.sites());
}

void bm_linearization_transpose(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  Linearization lin(f.c, f.phi, 1.0);
  Rng rng(3);
  Eigen::VectorXd w(lin.rows());
  for (int i = 0; i < w.size(); ++i) w[i] = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lin.apply_transpose(w).norm());
  }
  state.SetItemsProcessed(state.iterations() * f.g.sites());
}

void bm_winding_census(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  TorusGeometry g = build_torus(n, 8 * kPi);
  Connection c = base_connection(g, 1);
  auto [phi, alpha] = seed_from_divisor(g, 1, 1.0, default_divisor(g, 1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(winding_census(c, phi).size());
  }
  state.SetItemsProcessed(state.iterations() * g.plaquettes());
}

void bm_solve_vortex(benchmark::State& state) {
  SolveConfig cfg;
  cfg.d = 1;
  cfg.tau = 1.0;
  cfg.vol = 8 * kPi;
  cfg.n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const SolveReport rep = solve(cfg);
    if (!rep.converged) state.SkipWithError("solve did not converge");
    benchmark::DoNotOptimize(rep.final_norm);
  }
}

}  // namespace

BENCHMARK(bm_residual)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_dbar)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_linearization_apply)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_linearization_transpose)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(bm_winding_census)->Arg(32)->Arg(64);
BENCHMARK(bm_solve_vortex)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
