#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dskg/mode_ode.hpp"
#include "dskg/nonlinearity.hpp"
#include "dskg/propagator.hpp"
#include "dskg/spectral.hpp"

using namespace dskg;

namespace {

Field gaussian(const Grid& g, double amp, double width) {
    Field f = Field::zeros(g);
    const std::size_t axis = std::size_t(g.N);
    for (std::size_t i = 0; i < g.size(); ++i) {
        double r2 = 0.0;
        std::size_t rest = i;
        for (int d = g.n - 1; d >= 0; --d) {
            const double x = double(rest % axis) * g.dx() - g.L / 2.0;
            r2 += x * x;
            rest /= axis;
        }
        f.samples[i] = amp * std::exp(-r2 / (2 * width * width));
    }
    return f;
}

PhysicalParams bench_params() {
    PhysicalParams p;
    p.H = 0.3;
    p.mass = 1.0;
    p.lambda = 1.0;
    return p;
}

}  // namespace

static void BM_transform_roundtrip(benchmark::State& state) {
    const int n = int(state.range(0)), N = int(state.range(1));
    Grid g{n, N, 20.0};
    const Field f = gaussian(g, 0.5, 1.0);
    for (auto _ : state) {
        const Field back = inverse(transform(f));
        benchmark::DoNotOptimize(back.samples.data());
    }
    state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(g.size()));
}
BENCHMARK(BM_transform_roundtrip)
    ->Args({1, 128})
    ->Args({1, 1024})
    ->Args({2, 64})
    ->Args({2, 256});

static void BM_solve_mode(benchmark::State& state) {
    const PhysicalParams p = bench_params();
    const DerivedConstants d = derive_constants(p);
    std::vector<double> tgrid(int(state.range(0)) + 1);
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        tgrid[i] = 10.0 * double(i) / double(tgrid.size() - 1);
    for (auto _ : state) {
        const ModeSolution ms = solve_mode(50.0, tgrid, p, d.Q);
        benchmark::DoNotOptimize(ms.rho0.data());
    }
}
BENCHMARK(BM_solve_mode)->Arg(64)->Arg(256)->Arg(1024);

static void BM_mode_table(benchmark::State& state) {
    const PhysicalParams p = bench_params();
    const DerivedConstants d = derive_constants(p);
    Grid g{2, int(state.range(0)), 20.0};
    std::vector<double> tgrid(65);
    for (std::size_t i = 0; i < tgrid.size(); ++i) tgrid[i] = double(i) / 64.0;
    for (auto _ : state) {
        const ModeTable table(g, tgrid, p, d.Q);
        benchmark::DoNotOptimize(table.shells().data());
    }
}
BENCHMARK(BM_mode_table)->Arg(16)->Arg(32);

static void BM_eval_h(benchmark::State& state) {
    const PhysicalParams p = bench_params();
    const DerivedConstants d = derive_constants(p);
    Grid g{1, int(state.range(0)), 20.0};
    const Field u = gaussian(g, 0.5, 1.0);
    for (auto _ : state) {
        const Field h = eval_h(u, 0.5, p, d);
        benchmark::DoNotOptimize(h.samples.data());
    }
}
BENCHMARK(BM_eval_h)->Arg(128)->Arg(1024);

static void BM_rk4_step(benchmark::State& state) {
    const PhysicalParams p = bench_params();
    const DerivedConstants d = derive_constants(p);
    Grid g{1, int(state.range(0)), 20.0};
    const Field u0 = gaussian(g, 0.05, 1.0);
    const double dt = 1.0 / 512;
    for (auto _ : state) {
        // one-step direct solve isolates the per-step cost
        const Trajectory t = direct_solve(u0, Field::zeros(g), dt, dt,
                                          Equation::shifted_cubic, p, d);
        benchmark::DoNotOptimize(t.snapshots.back().u.samples.data());
    }
}
BENCHMARK(BM_rk4_step)->Arg(128)->Arg(512);

BENCHMARK_MAIN();
