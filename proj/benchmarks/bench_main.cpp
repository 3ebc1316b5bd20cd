// Microbenchmarks for the pipeline's hot paths: logistic fitting, pair
// screening, WOE encoding, ranking metrics, and net training.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "woenet/frame.hpp"
#include "woenet/glm.hpp"
#include "woenet/metrics.hpp"
#include "woenet/pipeline.hpp"
#include "woenet/prep.hpp"
#include "woenet/rng.hpp"
#include "woenet/sigmoid.hpp"
#include "woenet/tinynet.hpp"
#include "woenet/varclust.hpp"

namespace {

using namespace woenet;

// One deterministic dataset per (rows, columns) shape.
Frame make_frame(std::size_t n, std::size_t p, std::uint64_t seed = 99) {
    Rng rng(seed);
    Frame f;
    std::vector<std::vector<double>> cols(p, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            cols[j][i] = rng.gaussian();
            if (j < 3) z += 0.4 * cols[j][i];
        }
        z += 0.8 * cols[0][i] * cols[1 % p][i];
        y[i] = rng.next_double() < sigmoid(z) ? 1.0 : 0.0;
    }
    for (std::size_t j = 0; j < p; ++j) f.add_column("x" + std::to_string(j), std::move(cols[j]));
    f.add_column("y", std::move(y));
    f.set_target("y");
    return f;
}

void BM_LogisticFit(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t p = static_cast<std::size_t>(state.range(1));
    Frame f = make_frame(n, p);
    Design d = design_from(f, f.predictor_names());
    for (auto _ : state) benchmark::DoNotOptimize(fit_logistic(d, f.target()));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_LogisticFit)->Args({2000, 5})->Args({6000, 12})->Unit(benchmark::kMillisecond);

void BM_PairScreen(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    Frame f = make_frame(3000, p);
    auto pairs = enumerate_pairs(f.predictor_names());
    for (auto _ : state) benchmark::DoNotOptimize(screen_interactions(f, pairs, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_PairScreen)->Arg(6)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_WoeFitApply(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Frame f = make_frame(n, 10);
    for (auto _ : state) {
        WoeEncoder enc = fit_woe(f, 10, 0.5);
        benchmark::DoNotOptimize(apply_woe(enc, f));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * 10);
}
BENCHMARK(BM_WoeFitApply)->Arg(3000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AucKs(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Frame f = make_frame(n, 3);
    Design d = design_from(f, f.predictor_names());
    LogisticModel m = fit_logistic(d, f.target());
    std::vector<double> scores = predict_proba(m, d);
    for (auto _ : state) {
        benchmark::DoNotOptimize(auc(scores, f.target()));
        benchmark::DoNotOptimize(ks(scores, f.target()));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AucKs)->Arg(3000)->Arg(30000)->Unit(benchmark::kMillisecond);

void BM_NetTrain(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Frame f = make_frame(n, 2);
    TrainConfig cfg;
    cfg.learning_rates = {1e-2, 1e-1};
    cfg.max_iters = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            train_tinynet(f.values("x0"), f.values("x1"), f.target(), 1, cfg));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n) * 2000);
}
BENCHMARK(BM_NetTrain)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Cluster(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    Frame f = make_frame(2000, p);
    std::vector<std::string> names = f.predictor_names();
    std::vector<std::vector<double>> columns;
    for (const auto& name : names) columns.push_back(f.values(name));
    for (auto _ : state)
        benchmark::DoNotOptimize(cluster_variables(names, columns, 0.9));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p));
}
BENCHMARK(BM_Cluster)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
