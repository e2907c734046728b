#include <benchmark/benchmark.h>

#include "bohmrotor/evolve.hpp"
#include "bohmrotor/flow.hpp"
#include "bohmrotor/probes.hpp"

using namespace bohmrotor;

namespace {

const ModelParams kCoupled{2.0, 0.9, 1.0, 0.2};

// Desk grid for range(0) == 0, paper grid otherwise.
GridSpec grid_for(const benchmark::State& state) {
    return state.range(0) == 0 ? make_grid(1024, 128, kTwoPi * 11.0 / 1024.0)
                               : make_grid(4096, 512, kTwoPi * 43.0 / 4096.0);
}

WaveField kicked_state(const GridSpec& grid, int periods) {
    WaveField field = init_momentum_eigenstate(grid, {24, 24});
    for (int n = 0; n < periods; ++n) {
        field = step_period(field, kCoupled);
    }
    return field;
}

void BM_transform(benchmark::State& state) {
    const WaveField field = kicked_state(grid_for(state), 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transform(field, Representation::Momentum));
    }
}
BENCHMARK(BM_transform)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_step_period(benchmark::State& state) {
    WaveField field = kicked_state(grid_for(state), 1);
    for (auto _ : state) {
        field = step_period(field, kCoupled);
    }
}
BENCHMARK(BM_step_period)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_velocity_field(benchmark::State& state) {
    const WaveField field = field_at(kicked_state(grid_for(state), 5), kCoupled, 0.37);
    for (auto _ : state) {
        benchmark::DoNotOptimize(velocity_field(field, kCoupled));
    }
}
BENCHMARK(BM_velocity_field)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_advance_probes(benchmark::State& state) {
    const GridSpec grid = make_grid(1024, 128, kTwoPi * 11.0 / 1024.0);
    const WaveField post_kick = kicked_state(grid, 5).with_time(5.0);
    ProbeSet probes;
    probes.time = 5.0;
    const int count = static_cast<int>(state.range(0));
    for (int j = 0; j < count; ++j) {
        probes.probes.push_back({kTwoPi * j / count, 1.0, ProbeStatus::Active, j});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(advance_probes(probes, post_kick, kCoupled, 5.0, 5.1, 1e-3));
    }
    state.SetItemsProcessed(state.iterations() * count * 100);
}
BENCHMARK(BM_advance_probes)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
