#include <benchmark/benchmark.h>

#include "leastaction/agent.hpp"
#include "leastaction/config.hpp"
#include "leastaction/oracle.hpp"

using namespace leastaction;

static void BM_PathTime(benchmark::State& state) {
    const auto medium = paper_medium();
    const InterfaceState s{{21, 37}};
    for (auto _ : state) benchmark::DoNotOptimize(path_time(medium, s));
}
BENCHMARK(BM_PathTime);

static void BM_BruteForce(benchmark::State& state) {
    const int height = static_cast<int>(state.range(0));
    const LayeredMedium medium({1.0, 1.3, 1.6}, 50, height, {0, 0}, {150, double(height)});
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_optimum(medium));
    state.SetComplexityN(static_cast<long>(state_space_size(medium)));
}
BENCHMARK(BM_BruteForce)->RangeMultiplier(2)->Range(50, 800)->Complexity();

static void BM_FermatContinuous(benchmark::State& state) {
    const auto slabs = static_cast<std::size_t>(state.range(0));
    std::vector<double> indices;
    for (std::size_t i = 0; i < slabs; ++i) indices.push_back(1.0 + 0.3 * static_cast<double>(i % 3));
    const LayeredMedium medium(indices, 50, 50, {0, 0}, {50.0 * slabs, 50});
    for (auto _ : state) benchmark::DoNotOptimize(fermat_continuous(medium));
}
BENCHMARK(BM_FermatContinuous)->Arg(3)->Arg(5)->Arg(9);

static void BM_Episode(benchmark::State& state) {
    const auto medium = paper_medium();
    const InterfaceState s_ini{{0, 0}};
    const auto scale = ScoreScale::normalized_to(path_time(medium, s_ini));
    AgentConfig config;
    QTable table(medium.num_actions());
    Rng rng(1);
    int episode = 0;
    for (auto _ : state) {
        auto records = run_episode(medium, table, config, s_ini, scale, episode++, rng);
        benchmark::DoNotOptimize(records);
    }
    state.SetItemsProcessed(state.iterations() * config.rounds_per_episode);
}
BENCHMARK(BM_Episode);

static void BM_FullTraining(benchmark::State& state) {
    const auto medium = paper_medium();
    const InterfaceState s_ini{{0, 0}};
    const auto scale = ScoreScale::normalized_to(path_time(medium, s_ini));
    const AgentConfig config;
    for (auto _ : state) {
        QTable table(medium.num_actions());
        Rng rng(config.seed);
        for (int e = 0; e < config.episodes; ++e) {
            benchmark::DoNotOptimize(run_episode(medium, table, config, s_ini, scale, e, rng));
        }
    }
}
BENCHMARK(BM_FullTraining)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
