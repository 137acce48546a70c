#include <benchmark/benchmark.h>

#include "favprop/channel.hpp"
#include "favprop/metrics.hpp"
#include "favprop/montecarlo.hpp"
#include "favprop/occupancy.hpp"

using namespace favprop;

namespace {

void BM_GenerateRayleigh(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const ChannelModelSpec spec = ChannelModelSpec::rayleigh();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Rng rng = Rng::substream(1, trial++);
        benchmark::DoNotOptimize(generate(spec, m, k, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * k));
}

void BM_GenerateUrLos(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const ChannelModelSpec spec = ChannelModelSpec::ur_los();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Rng rng = Rng::substream(1, trial++);
        benchmark::DoNotOptimize(generate(spec, m, k, rng));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m * k));
}

void BM_GramianSpectrum(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    Rng rng(7);
    const ChannelMatrix g = generate(ChannelModelSpec::rayleigh(), m, k, rng).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(gramian_spectrum(g));
}

void BM_AnalyzeReport(benchmark::State& state) {
    Rng rng(7);
    const ChannelMatrix g = generate(ChannelModelSpec::ur_los(), 100, 10, rng).matrix;
    for (auto _ : state) benchmark::DoNotOptimize(analyze(g, 1.0));
}

void BM_DropPmf(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(drop_pmf(m, k));
}

void BM_SimulateDrop(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_drop(100, 10, 100000, 1, 1));
    state.SetItemsProcessed(state.iterations() * 100000);
}

void BM_VariancePairsUrLos(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(
            variance_study(ChannelModel::UrLos, {100}, 10000, 1, 1));
    state.SetItemsProcessed(state.iterations() * 10000);
}

}  // namespace

BENCHMARK(BM_GenerateRayleigh)->Args({100, 10})->Args({200, 20});
BENCHMARK(BM_GenerateUrLos)->Args({100, 10})->Args({200, 20});
BENCHMARK(BM_GramianSpectrum)->Args({100, 10})->Args({200, 20});
BENCHMARK(BM_AnalyzeReport);
BENCHMARK(BM_DropPmf)->Args({100, 10})->Args({200, 20});
BENCHMARK(BM_SimulateDrop)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VariancePairsUrLos)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
