#include <benchmark/benchmark.h>

#include <complex>
#include <span>

#include "holodyn/bifurcation.hpp"
#include "holodyn/cycles.hpp"
#include "holodyn/green.hpp"
#include "holodyn/lyapunov.hpp"

using namespace holodyn;

static void BM_GreenPoly(benchmark::State& state) {
    PolyC P({cplx(-0.75, 0.1), cplx(0.0), cplx(1.0)});
    cplx z(0.31, 0.42);
    for (auto _ : state) {
        auto g = green_poly(P, z, 1e-12);
        benchmark::DoNotOptimize(g.value);
    }
}
BENCHMARK(BM_GreenPoly);

static void BM_LyapFormula(benchmark::State& state) {
    cplx c(-0.4, 0.35);
    for (auto _ : state) {
        auto est = lyap_formula(FamilySpec::quadratic(),
                                std::span<const cplx>(&c, 1));
        benchmark::DoNotOptimize(est.value);
    }
}
BENCHMARK(BM_LyapFormula);

static void BM_PeriodicCycles(benchmark::State& state) {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-0.2, 0.1));
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto cs = periodic_cycles(m, n);
        benchmark::DoNotOptimize(cs.size());
    }
}
BENCHMARK(BM_PeriodicCycles)->Arg(4)->Arg(6)->Arg(8);

static void BM_PerNCenters(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto cs = per_n_centers(n);
        benchmark::DoNotOptimize(cs.size());
    }
}
BENCHMARK(BM_PerNCenters)->Arg(5)->Arg(7);

static void BM_ScanL(benchmark::State& state) {
    ParamGrid g;
    int res = static_cast<int>(state.range(0));
    g.axes.push_back({cplx(-0.5, 0.0), 2.0, res});
    for (auto _ : state) {
        auto L = scan_L(FamilySpec::quadratic(), g);
        benchmark::DoNotOptimize(L.values.data());
    }
}
BENCHMARK(BM_ScanL)->Arg(64)->Arg(128);

static void BM_DdcDensity(benchmark::State& state) {
    ParamGrid g;
    g.axes.push_back({cplx(-0.5, 0.0), 2.0, 256});
    auto L = scan_L(FamilySpec::quadratic(), g);
    for (auto _ : state) {
        auto den = ddc_density(L);
        benchmark::DoNotOptimize(den.total_mass);
    }
}
BENCHMARK(BM_DdcDensity);

static void BM_Birkhoff(benchmark::State& state) {
    auto m = instantiate(FamilySpec::quadratic(), cplx(-0.12, 0.74));
    for (auto _ : state) {
        auto est = lyap_birkhoff(m, static_cast<int>(state.range(0)), 9);
        benchmark::DoNotOptimize(est.value);
    }
}
BENCHMARK(BM_Birkhoff)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
