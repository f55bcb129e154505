#include <benchmark/benchmark.h>

#include <bibunc/error_models.hpp>
#include <bibunc/indicators.hpp>
#include <bibunc/simulation.hpp>

#include <vector>

using namespace bibunc;

namespace {

const CitationErrorSample& training_sample() {
    static const auto s = synthesize_training_sample(embedded_paper_sample(), 6120.0 / 372.0, 0.31, 1).sample;
    return s;
}

NegBinPosterior posterior(ModelKind kind) {
    NegBinModelSpec spec;
    spec.direction = kind;
    McmcConfig cfg;
    cfg.chains = 2;
    cfg.warmup = 500;
    cfg.keep = 500;
    return fit_citation_error_model(training_sample(), spec, cfg);
}

}  // namespace

static void BM_FitCitationModel(benchmark::State& state) {
    McmcConfig cfg;
    cfg.keep = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto post = fit_citation_error_model(training_sample(), NegBinModelSpec{}, cfg);
        benchmark::DoNotOptimize(post.draws.data());
    }
    state.SetItemsProcessed(state.iterations() * cfg.chains * (cfg.warmup + cfg.keep));
}
BENCHMARK(BM_FitCitationModel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_PredictOmitted(benchmark::State& state) {
    const auto post = posterior(ModelKind::SecondKind);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(predict_omitted(post, 16, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictOmitted)->Arg(1 << 12)->Arg(1 << 16);

static void BM_Indicators(benchmark::State& state) {
    ScenarioConfig cfg = exercise_scenario(ExerciseId::A4, 1);
    const auto sets = generate_scenario(cfg);
    for (auto _ : state) {
        const auto cells = build_normalization(sets, KeyMode::DocTypeOnly);
        for (std::size_t u = 0; u + 1 < sets.size(); ++u) benchmark::DoNotOptimize(indicators_for(sets[u], cells));
    }
    state.SetItemsProcessed(state.iterations() * 15000);
}
BENCHMARK(BM_Indicators);

// Monte Carlo iterations over an exercise layout; both channels.
static void BM_Propagate(benchmark::State& state) {
    const auto id = static_cast<ExerciseId>(state.range(0));
    const auto kind = id >= ExerciseId::A1 ? ModelKind::FirstKind : ModelKind::SecondKind;
    const auto post = posterior(kind);
    const auto conf = fit_doctype_error_model(synthetic_confusion_table(), 1.0, kind);
    auto sets = generate_scenario(exercise_scenario(id, 1));
    const auto reference = sets.back();
    sets.pop_back();
    PropagationConfig cfg;
    cfg.iterations = static_cast<std::size_t>(state.range(1));
    cfg.channels = {true, true};
    cfg.direction = kind;
    cfg.workers = 1;
    for (auto _ : state) {
        auto r = propagate(sets, reference, {&post, &conf}, cfg);
        benchmark::DoNotOptimize(r.distributions.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(1));
    state.SetLabel(std::string(to_string(id)));
}
BENCHMARK(BM_Propagate)
    ->Args({static_cast<int>(ExerciseId::E4), 2000})
    ->Args({static_cast<int>(ExerciseId::A4), 100})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
