#include <bibunc/random.hpp>
#include <bibunc/simulation.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bibunc {

std::string_view to_string(ExerciseId id) noexcept {
    switch (id) {
        case ExerciseId::E1: return "1";
        case ExerciseId::E2: return "2";
        case ExerciseId::E3: return "3";
        case ExerciseId::E4: return "4";
        case ExerciseId::A1: return "A1";
        case ExerciseId::A2: return "A2";
        case ExerciseId::A3: return "A3";
        case ExerciseId::A4: return "A4";
    }
    return "?";
}

std::optional<ExerciseId> parse_exercise(std::string_view text) noexcept {
    for (auto id : kAllExercises) {
        const auto name = to_string(id);
        const bool lower_match =
            name.size() == text.size() && name.size() == 2 && text[0] == 'a' && text[1] == name[1];
        if (text == name || lower_match) return id;
    }
    return std::nullopt;
}

namespace {

bool first_kind(ExerciseId id) noexcept {
    return id == ExerciseId::A1 || id == ExerciseId::A2 || id == ExerciseId::A3 || id == ExerciseId::A4;
}

std::string title_of(ExerciseId id) {
    switch (id) {
        case ExerciseId::E1: return "Exercise 1: predicted error-free document types and citation counts";
        case ExerciseId::E2: return "Exercise 2: citation-count error, simulated error-free indicators";
        case ExerciseId::E3: return "Exercise 3: document-type error, simulated error-free indicators";
        case ExerciseId::E4: return "Exercise 4: both error sources, simulated error-free indicators";
        case ExerciseId::A1: return "Exercise A1: citation-count error injected into error-free data";
        case ExerciseId::A2: return "Exercise A2: document-type error injected into error-free data";
        case ExerciseId::A3: return "Exercise A3: both error sources injected into error-free data";
        case ExerciseId::A4: return "Exercise A4: both error sources injected, 100x larger units";
    }
    return {};
}

std::string missing_input(ExerciseId id, const char* what) {
    return "exercise " + std::string(to_string(id)) + " requires " + what;
}

}  // namespace

Channels exercise_channels(ExerciseId id) noexcept {
    switch (id) {
        case ExerciseId::E2:
        case ExerciseId::A1: return {true, false};
        case ExerciseId::E3:
        case ExerciseId::A2: return {false, true};
        default: return {true, true};
    }
}

ScenarioConfig exercise_scenario(ExerciseId id, std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    switch (id) {
        case ExerciseId::E1:
            break;
        case ExerciseId::E2:
        case ExerciseId::E3:
        case ExerciseId::E4:
            cfg.sets = {{"A", SetRole::AssessedUnit, 40, 0.8},
                        {"B", SetRole::AssessedUnit, 50, 1.2},
                        {"ref", SetRole::ReferenceSet, 200, 1.0}};
            break;
        case ExerciseId::A1:
        case ExerciseId::A2:
        case ExerciseId::A3:
            cfg.sets = {{"A", SetRole::AssessedUnit, 20, std::log(5.0)},
                        {"B", SetRole::AssessedUnit, 30, std::log(7.0)},
                        {"ref", SetRole::ReferenceSet, 1000, std::log(6.0)}};
            break;
        case ExerciseId::A4:
            cfg.sets = {{"A", SetRole::AssessedUnit, 2000, std::log(5.0)},
                        {"B", SetRole::AssessedUnit, 3000, std::log(7.0)},
                        {"ref", SetRole::ReferenceSet, 10000, std::log(6.0)}};
            break;
    }
    return cfg;
}

ExerciseReport run_exercise(ExerciseId id, const ExerciseTraining& training, const ExerciseOptions& options) {
    const ModelKind direction = first_kind(id) ? ModelKind::FirstKind : ModelKind::SecondKind;
    const Channels channels = exercise_channels(id);
    if (channels.citations && !training.citation_sample) {
        throw UsageError(missing_input(id, "a citation error sample (citation_error_sample.csv)"));
    }
    if (channels.doctypes && !training.confusion) {
        throw UsageError(missing_input(id, "a document-type confusion table (doctype_confusion.csv)"));
    }
    if (options.draws < 1) throw UsageError("exercise needs at least one draw");

    ExerciseReport report;
    report.id = id;
    report.title = title_of(id);
    report.direction = direction;

    std::optional<NegBinPosterior> citation_model;
    std::optional<DirichletPosterior> doctype_model;
    if (channels.citations) {
        NegBinModelSpec spec;
        spec.direction = direction;
        citation_model = fit_citation_error_model(*training.citation_sample, spec, options.mcmc, options.workers);
        report.citation_diagnostics = citation_model->diagnostics;
    }
    if (channels.doctypes) doctype_model = fit_doctype_error_model(*training.confusion, options.pseudocount, direction);

    if (id == ExerciseId::E1) {
        struct Item {
            const char* label;
            DocType doctype;
            std::int64_t citations;
        };
        constexpr Item items[] = {{"P1", DocType::Article, 5}, {"P2", DocType::Review, 10}, {"P3", DocType::Letter, 0}};

        FrequencyTable types{"Predicted error-free document types", {}, {}, {}};
        for (auto t : kAllDocTypes) types.column_labels.emplace_back(to_string(t));

        std::int64_t max_observed = 0;
        for (const auto& it : items) max_observed = std::max(max_observed, it.citations);
        const std::int64_t cap = max_observed + 20;
        FrequencyTable counts{"Predicted error-free citation counts", {}, {}, {}};
        for (std::int64_t v = 0; v < cap; ++v) counts.column_labels.push_back(std::to_string(v));
        counts.column_labels.push_back(std::to_string(cap) + "+");

        for (std::size_t k = 0; k < std::size(items); ++k) {
            const auto& it = items[k];
            const auto item_seed = mix64(options.seed ^ (0xE1ULL << 8 | k));
            types.row_labels.emplace_back(it.label);
            auto& trow = types.counts.emplace_back(kDocTypeCount, 0);
            for (auto t : predict_doctype(*doctype_model, it.doctype, options.draws, item_seed)) ++trow[index_of(t)];

            counts.row_labels.emplace_back(it.label);
            auto& crow = counts.counts.emplace_back(static_cast<std::size_t>(cap) + 1, 0);
            for (auto c : predict_error_free_citations(*citation_model, it.citations, options.draws, item_seed)) {
                ++crow[static_cast<std::size_t>(std::min(c, cap))];
            }
        }
        report.frequency_tables = {std::move(types), std::move(counts)};
        return report;
    }

    auto sets = generate_scenario(exercise_scenario(id, options.seed));
    const PublicationSet reference = std::move(sets.back());
    sets.pop_back();

    PropagationConfig cfg;
    cfg.iterations = options.draws;
    cfg.seed = options.seed;
    cfg.channels = channels;
    cfg.direction = direction;
    cfg.key_mode = KeyMode::DocTypeOnly;
    cfg.universe = NormalizationUniverse::Pooled;
    cfg.workers = options.workers;

    ErrorModels models;
    if (citation_model) models.citations = &*citation_model;
    if (doctype_model) models.doctypes = &*doctype_model;
    report.propagation = propagate(sets, reference, models, cfg);
    return report;
}

}  // namespace bibunc
