#pragma once

#include <bibunc/data_model.hpp>
#include <bibunc/error_models.hpp>
#include <bibunc/indicators.hpp>
#include <bibunc/predictive.hpp>
#include <bibunc/summary.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bibunc {

// ---------------------------------------------------------------------------
// Propagation
// ---------------------------------------------------------------------------

enum class Indicator { P, C, MNCS };
std::string_view to_string(Indicator indicator) noexcept;

/// Which publications define the normalization cells.
enum class NormalizationUniverse {
    Pooled,         // reference set plus all assessed units
    ReferenceOnly,  // reference set only
};

std::string_view to_string(NormalizationUniverse u) noexcept;
std::optional<NormalizationUniverse> parse_universe(std::string_view text) noexcept;

struct Channels {
    bool citations = true;
    bool doctypes = false;

    friend bool operator==(const Channels&, const Channels&) = default;
};

/// "citations", "doctypes" or "citations,doctypes".
std::optional<Channels> parse_channels(std::string_view text) noexcept;
std::string to_string(Channels channels);

struct PropagationConfig {
    std::size_t iterations = 2000;
    std::uint64_t seed = 1;
    Channels channels;
    ModelKind direction = ModelKind::SecondKind;
    KeyMode key_mode = KeyMode::DocTypeOnly;
    NormalizationUniverse universe = NormalizationUniverse::Pooled;
    /// One posterior parameter draw (and one doctype probability matrix)
    /// per iteration, shared by every publication. When false, each
    /// publication draws its own parameters.
    bool share_parameter_draws = true;
    unsigned workers = 1;

    void validate() const;
};

/// Fitted error models; either may be absent when its channel is disabled.
struct ErrorModels {
    const NegBinPosterior* citations = nullptr;
    const DirichletPosterior* doctypes = nullptr;
};

struct IndicatorDistribution {
    std::string unit;
    Indicator indicator = Indicator::P;
    /// Indicator on the unperturbed input; absent for an undefined MNCS.
    std::optional<double> observed;
    /// One value per iteration; NaN where MNCS was undefined.
    std::vector<double> replicates;
    std::size_t undefined = 0;
    /// Absent when every replicate is undefined.
    std::optional<DistributionSummary> summary;
};

struct PropagationResult {
    PropagationConfig config;
    std::vector<IndicatorResult> observed;  // per unit
    /// Unit-major: distributions[3 * u + k] with k = P, C, MNCS.
    std::vector<IndicatorDistribution> distributions;

    const IndicatorDistribution& distribution(std::size_t unit, Indicator indicator) const {
        return distributions.at(3 * unit + static_cast<std::size_t>(indicator));
    }
};

/// Receives every item's predicted values, one iteration at a time and in
/// iteration order.
using DrawSink = std::function<void(std::span<const PredictiveDraw>)>;

/// Monte Carlo propagation. For each iteration: perturb every publication of
/// the units and the reference set with the enabled error channels, rebuild
/// the normalization cells from the perturbed data, and compute P, C, MNCS
/// per unit. Results are identical for any worker count.
PropagationResult propagate(std::span<const PublicationSet> units, const PublicationSet& reference,
                            const ErrorModels& models, const PropagationConfig& cfg,
                            const DrawSink& sink = {});

// ---------------------------------------------------------------------------
// Scenario generation
// ---------------------------------------------------------------------------

enum class Discretization { Floor, Round };

struct ScenarioSet {
    std::string name;
    SetRole role = SetRole::AssessedUnit;
    std::size_t size = 0;
    /// Log-scale location before document-type scaling.
    double location = 0.0;
};

struct ScenarioConfig {
    std::vector<ScenarioSet> sets;
    /// Indexed by DocType: article, review, letter, other.
    std::array<double, kDocTypeCount> mixture{0.68, 0.04, 0.03, 0.25};
    std::array<double, kDocTypeCount> scaling{1.0, 1.5, 0.2, 0.1};
    double log_sd = 1.0;
    Discretization discretization = Discretization::Floor;
    std::uint64_t seed = 1;

    void validate() const;
};

/// Citations = discretize(lognormal(location * scaling[type], log_sd)).
std::vector<PublicationSet> generate_scenario(const ScenarioConfig& cfg);

// ---------------------------------------------------------------------------
// Synthetic training data
// ---------------------------------------------------------------------------

struct SynthesizedSample {
    CitationErrorSample sample;
    /// Realized Pearson r; absent when a column has zero variance.
    std::optional<double> achieved_r;
    /// Set when the target correlation could not be met within 0.05.
    std::optional<std::string> warning;
};

/// Joint (observed, omitted) rows whose omitted-citation marginal equals
/// `marginal` exactly and whose observed counts total
/// round(target_mean_c * records). Omitted values are coupled to the ranks
/// of the observed counts through a Gaussian score with tuned weight so the
/// realized Pearson r lands near `target_r`.
SynthesizedSample synthesize_training_sample(const MissedCitationMarginal& marginal, double target_mean_c,
                                             double target_r, std::uint64_t seed);

/// Synthetic (true, observed) document-type counts used when no confusion
/// table is supplied. Mostly diagonal with the off-diagonal structure
/// typical of database type assignment.
DocTypeConfusionTable synthetic_confusion_table();

// ---------------------------------------------------------------------------
// Exercises
// ---------------------------------------------------------------------------

enum class ExerciseId { E1, E2, E3, E4, A1, A2, A3, A4 };

std::string_view to_string(ExerciseId id) noexcept;
std::optional<ExerciseId> parse_exercise(std::string_view text) noexcept;
inline constexpr std::array<ExerciseId, 8> kAllExercises{ExerciseId::E1, ExerciseId::E2, ExerciseId::E3,
                                                         ExerciseId::E4, ExerciseId::A1, ExerciseId::A2,
                                                         ExerciseId::A3, ExerciseId::A4};

struct ExerciseTraining {
    std::optional<CitationErrorSample> citation_sample;
    std::optional<DocTypeConfusionTable> confusion;
};

struct ExerciseOptions {
    std::size_t draws = 2000;
    std::uint64_t seed = 1;
    McmcConfig mcmc;
    double pseudocount = 1.0;
    unsigned workers = 1;
};

struct FrequencyTable {
    std::string title;
    std::vector<std::string> row_labels;
    std::vector<std::string> column_labels;
    std::vector<std::vector<std::size_t>> counts;
};

struct ExerciseReport {
    ExerciseId id = ExerciseId::E1;
    std::string title;
    ModelKind direction = ModelKind::SecondKind;
    std::vector<FrequencyTable> frequency_tables;
    std::optional<PropagationResult> propagation;
    std::optional<McmcDiagnostics> citation_diagnostics;
};

/// Channels used by an exercise.
Channels exercise_channels(ExerciseId id) noexcept;

/// Unit and reference layout of an exercise's synthetic data set.
ScenarioConfig exercise_scenario(ExerciseId id, std::uint64_t seed);

/// Fits the required models from `training` and runs the exercise. Throws
/// UsageError naming the missing input when training data is absent.
ExerciseReport run_exercise(ExerciseId id, const ExerciseTraining& training, const ExerciseOptions& options);

}  // namespace bibunc
