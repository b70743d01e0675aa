// Microbenchmarks for the hot paths: landscape evaluation, extremum
// search, Bessel evaluation, integrator steps and the eigensolver.

#include <benchmark/benchmark.h>

#include <cmath>

#include "washboard/dynamics.hpp"
#include "washboard/josephson.hpp"
#include "washboard/optics.hpp"
#include "washboard/potential.hpp"
#include "washboard/quantum.hpp"

namespace {

void BM_potential_force(benchmark::State& state) {
    const washboard::WashboardPotential p(0.5, 1.0, 1.0, 0.0);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.force(x));
        x += 1e-3;
    }
}
BENCHMARK(BM_potential_force);

void BM_find_extrema(benchmark::State& state) {
    const washboard::WashboardPotential p(0.5, 1.0, 1.0, 0.0);
    const double hi = 2.0 * washboard::kPi * static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(washboard::find_extrema(p, 0.0, hi));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_find_extrema)->Arg(1)->Arg(16)->Arg(256);

void BM_bessel_j0(benchmark::State& state) {
    // sweep both the power-series branch and the asymptotic branch
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(washboard::optics::bessel_j0(x));
        x += 0.05;
        if (x > 50.0) x = 0.0;
    }
}
BENCHMARK(BM_bessel_j0);

void BM_rk4_steps(benchmark::State& state) {
    const auto rs = washboard::josephson::build_rcsj_system_reduced(1.5, 25.0);
    washboard::SimConfig cfg;
    cfg.dt = 0.01;
    cfg.t_end = cfg.dt * static_cast<double>(state.range(0));
    cfg.sample_stride = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(washboard::simulate_deterministic(rs.system, cfg));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rk4_steps)->Arg(1000)->Arg(100000);

void BM_langevin_steps(benchmark::State& state) {
    washboard::DynamicalSystem sys;
    sys.damping = 1.0;
    sys.potential = washboard::WashboardPotential(0.1, 0.5, 1.0, 0.0);
    washboard::PhysConstants unit = washboard::PhysConstants::codata2018();
    unit.k_B = 1.0;
    washboard::SimConfig cfg;
    cfg.dt = 0.005;
    cfg.t_end = cfg.dt * static_cast<double>(state.range(0));
    cfg.sample_stride = static_cast<std::size_t>(state.range(0));
    cfg.temperature = 0.5;
    cfg.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(washboard::simulate_langevin(sys, cfg, unit));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_langevin_steps)->Arg(1000)->Arg(100000);

void BM_eigenlevels(benchmark::State& state) {
    const washboard::WashboardPotential p(0.5, 1.0, 1.0, 0.0);
    const double hbar_eff = std::sqrt(2.0 / 1000.0);
    const auto wp = washboard::quantum::WellProblem::from_washboard(
        p, 0, 1.0, hbar_eff, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(washboard::quantum::eigenlevels_fixed_grid(wp, 6));
    }
}
BENCHMARK(BM_eigenlevels)->Arg(256)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
