#include <benchmark/benchmark.h>

#include <random>

#include "issuecast/arima.hpp"
#include "issuecast/eval.hpp"
#include "issuecast/stats.hpp"
#include "issuecast/synthetic.hpp"

using namespace issuecast;

namespace {

std::vector<double> window(std::uint64_t seed) {
    const auto p = synthetic::make_project("bench", seed, {.weeks = 20});
    return p.issues.as_real();
}

void BM_SelectFitForecast(benchmark::State& state) {
    const auto w = window(7);
    for (auto _ : state) {
        const auto sel = arima::select_order(w);
        const auto m = arima::fit(w, sel.order);
        benchmark::DoNotOptimize(arima::forecast(m, 4));
    }
}
BENCHMARK(BM_SelectFitForecast);

void BM_BoxCoxFit(benchmark::State& state) {
    auto w = window(8);
    for (auto& v : w) v += 1.0;
    for (auto _ : state) benchmark::DoNotOptimize(ts::box_cox_fit(w));
}
BENCHMARK(BM_BoxCoxFit);

void BM_RollingEval(benchmark::State& state) {
    const auto p = synthetic::make_project("bench", 9, {.weeks = static_cast<std::size_t>(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(eval::rolling_eval(p.bugs, &p.issues));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(eval::rolling_step_count(p.weeks(), {})));
}
BENCHMARK(BM_RollingEval)->Arg(52)->Arg(104)->Arg(260);

void BM_EvaluateProjects(benchmark::State& state) {
    const auto corpus = synthetic::make_corpus(16, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            eval::evaluate_projects(corpus, {}, arima::TransferMode::Coefficients, static_cast<unsigned>(state.range(0))));
    }
}
BENCHMARK(BM_EvaluateProjects)->Arg(1)->Arg(4)->UseRealTime();

void BM_TCdf(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> t(-6.0, 6.0), df(1.0, 200.0);
    for (auto _ : state) benchmark::DoNotOptimize(stats::t_cdf(t(rng), df(rng)));
}
BENCHMARK(BM_TCdf);

void BM_Spearman(benchmark::State& state) {
    const auto p = synthetic::make_project("bench", 10, {.weeks = static_cast<std::size_t>(state.range(0))});
    const auto x = p.issues.as_real(), y = p.bugs.as_real();
    for (auto _ : state) benchmark::DoNotOptimize(stats::spearman_rho(x, y));
}
BENCHMARK(BM_Spearman)->Arg(104)->Arg(1040);

}  // namespace
BENCHMARK_MAIN();
