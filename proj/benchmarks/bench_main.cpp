#include <benchmark/benchmark.h>

#include "pnindex/convexity.hpp"
#include "pnindex/homopoly.hpp"
#include "pnindex/index_search.hpp"
#include "pnindex/numrange.hpp"

namespace {

using namespace pnindex;

void BM_radius_grid(benchmark::State& state) {
    const Norm norm = Norm::lp(4.0);
    const VectorHomoPoly P = lp_zero_poly(4);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(radius(P, norm, 1e-9, grid).value);
    }
}
BENCHMARK(BM_radius_grid)->Arg(4096)->Arg(16384)->Arg(65536);

void BM_sup_norm(benchmark::State& state) {
    const Norm norm = Norm::beta_quartic(2.0);
    const VectorHomoPoly P = tangent_poly(generator_poly(norm), {1.0, 0.0}, {0.0, 1.0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sup_norm(P, norm));
    }
}
BENCHMARK(BM_sup_norm);

void BM_polarization(benchmark::State& state) {
    const SymMultiForm A = polarize(generator_poly(Norm::beta_quartic(2.0)));
    const Vec2 args[4] = {{1.0, 0.2}, {0.3, -1.0}, {0.5, 0.5}, {-0.7, 0.1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(A.apply(args));
    }
}
BENCHMARK(BM_polarization);

void BM_objective(benchmark::State& state) {
    const Norm norm = Norm::lp(6.0);
    const SphereCache cache(norm, static_cast<int>(state.range(0)));
    const VectorHomoPoly P = lp_zero_poly(6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cache.objective(P));
    }
}
BENCHMARK(BM_objective)->Arg(256)->Arg(2048);

void BM_hessian_grid(benchmark::State& state) {
    const Norm norm = Norm::geom_mean(2.0, 4.0, 0.5);
    const int grid = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hessian_grid(norm, grid).certified);
    }
}
BENCHMARK(BM_hessian_grid)->Arg(256)->Arg(1024);

} // namespace

BENCHMARK_MAIN();
