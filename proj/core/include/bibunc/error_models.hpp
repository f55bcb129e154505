#pragma once

#include <bibunc/data_model.hpp>
#include <bibunc/sampling.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bibunc {

/// Direction of prediction.
///  - SecondKind: from observed (error-affected) data to error-free data.
///  - FirstKind:  from error-free data to error-affected data.
enum class ModelKind { SecondKind, FirstKind };

std::string_view to_string(ModelKind kind) noexcept;
std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept;

struct NormalPrior {
    double mean = 0.0;
    double sd = 1.0;
};

/// Negative-binomial regression for the number of omitted citations,
///
///     omitted ~ NegBin(mean = exp(intercept + slope * ln(predictor + 1)), dispersion)
///
/// where the predictor is the observed count (second kind) or the error-free
/// count observed + omitted (first kind). Dispersion has a normal prior on its
/// logarithm. A parameter can be pinned to a value, which removes it from the
/// sampler.
struct NegBinModelSpec {
    ModelKind direction = ModelKind::SecondKind;
    NormalPrior intercept{0.0, 0.8};
    NormalPrior slope{0.0, 1.0};
    NormalPrior log_dispersion{0.0, 1.0};
    std::optional<double> fixed_slope;
    std::optional<double> fixed_dispersion;

    /// Throws ValidationError on non-positive prior scales or bad pins.
    void validate() const;
};

struct McmcConfig {
    int chains = 4;
    int warmup = 1000;
    int keep = 1000;
    std::uint64_t seed = 0;
    double target_acceptance = 0.30;

    void validate() const;
};

struct NegBinDraw {
    double intercept = 0.0;
    double slope = 0.0;
    double dispersion = 1.0;

    /// Conditional mean of omitted citations at a predictor count.
    double mean_at(double predictor) const noexcept;
};

struct ParameterDiagnostics {
    /// Split R-hat; absent for a single chain or a pinned parameter.
    std::optional<double> rhat;
    double ess = 0.0;
};

struct McmcDiagnostics {
    ParameterDiagnostics intercept;
    ParameterDiagnostics slope;
    ParameterDiagnostics dispersion;
    std::vector<double> acceptance_rate;  // one per chain
    bool converged = true;                 // every available R-hat < kRhatThreshold
};

inline constexpr double kRhatThreshold = 1.05;

struct NegBinPosterior {
    NegBinModelSpec spec;
    McmcConfig config;
    /// Chain-major: draws[c * kept_per_chain + i].
    std::vector<NegBinDraw> draws;
    int chains = 0;
    int kept_per_chain = 0;
    McmcDiagnostics diagnostics;

    std::span<const NegBinDraw> chain(int c) const;
};

/// Adaptive random-walk Metropolis on (intercept, slope, log dispersion).
/// Deterministic for a given (sample, spec, cfg); `workers` only changes how
/// chains are scheduled.
NegBinPosterior fit_citation_error_model(const CitationErrorSample& sample, const NegBinModelSpec& spec,
                                         const McmcConfig& cfg, unsigned workers = 1);

/// Unnormalized log posterior of the regression; exposed for tests.
double negbin_log_likelihood(std::int64_t omitted, double mean, double dispersion) noexcept;

// ---------------------------------------------------------------------------
// MCMC diagnostics
// ---------------------------------------------------------------------------

/// Split R-hat (rank-free, Gelman et al.) over equally long chains.
/// nullopt for fewer than 2 chains or fewer than 4 draws per chain.
std::optional<double> split_rhat(std::span<const std::vector<double>> chains);

/// Multi-chain effective sample size using Geyer's initial monotone sequence.
double effective_sample_size(std::span<const std::vector<double>> chains);

/// Recomputes diagnostics from the stored draws.
McmcDiagnostics mcmc_diagnostics(const NegBinPosterior& posterior);

// ---------------------------------------------------------------------------
// Document-type confusion model
// ---------------------------------------------------------------------------

/// Dirichlet posterior of a categorical regression with one categorical
/// predictor. Row k holds the concentration over predicted types given
/// conditioning type k (observed type for SecondKind, true type for FirstKind).
struct DirichletPosterior {
    ModelKind direction = ModelKind::SecondKind;
    double pseudocount = 1.0;
    std::array<DocTypeProbabilities, kDocTypeCount> concentration{};

    const DocTypeProbabilities& row(DocType conditioning) const noexcept {
        return concentration[index_of(conditioning)];
    }
    DocTypeProbabilities mean(DocType conditioning) const noexcept;
};

/// Conjugate update: concentration = counts + pseudocount, exactly.
DirichletPosterior fit_doctype_error_model(const DocTypeConfusionTable& table, double pseudocount = 1.0,
                                           ModelKind direction = ModelKind::SecondKind);

/// A posterior that always returns the conditioning type.
DirichletPosterior identity_doctype_model(ModelKind direction = ModelKind::SecondKind);

// ---------------------------------------------------------------------------
// Prior predictive check
// ---------------------------------------------------------------------------

struct Quantiles {
    double q025 = 0.0;
    double q500 = 0.0;
    double q975 = 0.0;
};

struct PriorPredictivePoint {
    double predictor = 0.0;
    Quantiles mean;    // exp(intercept + slope * ln(predictor + 1))
    Quantiles counts;  // simulated omitted citations
    double share_zero = 0.0;
};

struct PriorPredictiveSummary {
    std::size_t draws = 0;
    /// Monte Carlo quantiles of exp(intercept).
    Quantiles baseline;
    /// Closed-form quantiles of exp(intercept) under the normal prior.
    Quantiles baseline_exact;
    std::vector<PriorPredictivePoint> grid;
};

/// Draws parameters from the priors (pinned parameters stay fixed) and
/// simulates omitted-citation counts at each predictor on the grid.
PriorPredictiveSummary prior_predictive_check(const NegBinModelSpec& spec, std::uint64_t seed,
                                              std::span<const double> predictor_grid, std::size_t draws = 100000);

}  // namespace bibunc
