#include "esec/chain.hpp"
#include "esec/generator.hpp"
#include "esec/predictor.hpp"
#include "esec/similarity.hpp"
#include "esec/table.hpp"

#include <benchmark/benchmark.h>

using namespace esec;

namespace {

SceneStream scene(const char* action, std::uint64_t seed) {
    GenParams p;
    p.action = action;
    p.seed = seed;
    p.distractor_count = 2;
    return generate_scene(p);
}

BuildOptions suite_options() {
    BuildOptions opt;
    opt.debounce = 10;
    return opt;
}

void BM_generate_scene(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(scene("hide", seed++));
}
BENCHMARK(BM_generate_scene)->Unit(benchmark::kMillisecond);

void BM_build_esec(benchmark::State& state) {
    const SceneStream s = scene("hide", 3);
    const BuildOptions opt = suite_options();
    for (auto _ : state) benchmark::DoNotOptimize(build_esec(s, opt));
}
BENCHMARK(BM_build_esec)->Unit(benchmark::kMillisecond);

void BM_similarity(benchmark::State& state) {
    const Esec a = build_esec(scene("hide", 3), suite_options());
    const Esec b = build_esec(scene("stir", 4), suite_options());
    for (auto _ : state) benchmark::DoNotOptimize(esec_similarity(a, b));
}
BENCHMARK(BM_similarity);

void BM_predict(benchmark::State& state) {
    ReferenceLibrary lib;
    for (const auto& act : action_names())
        for (std::uint64_t v = 0; v < 5; ++v)
            lib.classes[act].push_back(build_esec(scene(act.c_str(), 10 + v), suite_options()));
    const Esec query = build_esec(scene("hide", 99), suite_options());
    PredictorConfig cfg;
    cfg.refs_per_class = 5;
    for (auto _ : state) benchmark::DoNotOptimize(predict(query, lib, cfg));
}
BENCHMARK(BM_predict)->Unit(benchmark::kMillisecond);

void BM_schedule_chain(benchmark::State& state) {
    const std::vector<std::pair<double, double>> seq = {
        {13.8, 8.3}, {12.5, 6.5}, {11.7, 3.3}, {12.7, 5.0}, {12.0, 8.0}};
    for (auto _ : state) benchmark::DoNotOptimize(schedule_chain(seq));
}
BENCHMARK(BM_schedule_chain);

void BM_monte_carlo_1k(benchmark::State& state) {
    const std::vector<ActionTiming> table = {
        {"take_down", 11.7, 2.9, 3.3, 0.7, 3.3, 0.7}, {"put_on_top", 12.0, 2.1, 8.0, 1.9, 9.2, 1.7},
        {"shake", 12.5, 2.1, 6.5, 1.2, 10.8, 1.7},    {"push", 12.7, 1.9, 5.0, 1.1, 10.0, 1.6},
        {"hide", 13.8, 2.5, 8.3, 1.6, 10.3, 1.5},
    };
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo(table, ChainMode::Esec, 1000, 7, static_cast<int>(state.threads())));
}
BENCHMARK(BM_monte_carlo_1k)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
