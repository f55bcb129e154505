#include <bibunc/error_models.hpp>
#include <bibunc/parallel.hpp>
#include <bibunc/random.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

namespace bibunc {

std::string_view to_string(ModelKind kind) noexcept {
    return kind == ModelKind::SecondKind ? "second-kind" : "first-kind";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) noexcept {
    if (text == "second-kind" || text == "second") return ModelKind::SecondKind;
    if (text == "first-kind" || text == "first") return ModelKind::FirstKind;
    return std::nullopt;
}

void NegBinModelSpec::validate() const {
    auto check = [](const NormalPrior& p, const char* name) {
        if (!(p.sd > 0.0) || !std::isfinite(p.sd) || !std::isfinite(p.mean)) {
            throw ValidationError(std::string(name) + " prior needs a finite mean and a positive finite sd");
        }
    };
    check(intercept, "intercept");
    if (!fixed_slope) check(slope, "slope");
    if (!fixed_dispersion) check(log_dispersion, "log-dispersion");
    if (fixed_slope && !std::isfinite(*fixed_slope)) throw ValidationError("pinned slope must be finite");
    if (fixed_dispersion && !(*fixed_dispersion > 0.0)) throw ValidationError("pinned dispersion must be > 0");
}

void McmcConfig::validate() const {
    if (chains < 1) throw ValidationError("MCMC needs at least one chain");
    if (warmup < 100) throw ValidationError("MCMC warmup must be >= 100");
    if (keep < 100) throw ValidationError("MCMC keep must be >= 100");
    if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
        throw ValidationError("target acceptance must lie in (0, 1)");
    }
}

double NegBinDraw::mean_at(double predictor) const noexcept {
    return std::exp(intercept + slope * std::log1p(predictor));
}

std::span<const NegBinDraw> NegBinPosterior::chain(int c) const {
    if (c < 0 || c >= chains) throw UsageError("chain index out of range");
    return std::span<const NegBinDraw>(draws).subspan(static_cast<std::size_t>(c) * kept_per_chain,
                                                       static_cast<std::size_t>(kept_per_chain));
}

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;

double normal_logpdf(double x, const NormalPrior& p) noexcept {
    const double z = (x - p.mean) / p.sd;
    return -0.5 * z * z - std::log(p.sd) - kLogSqrt2Pi;
}

// log NegBin(o | mean = exp(eta), dispersion = exp(log_disp))
double negbin_loglik_eta(std::int64_t o, double eta, double log_disp) noexcept {
    const double disp = std::exp(log_disp);
    const double mu = std::exp(eta);
    const double on = static_cast<double>(o);
    if (!std::isfinite(disp)) {
        if (!(mu > 0.0)) return o == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
        return on * eta - mu - std::lgamma(on + 1.0);
    }
    const double log1p_ratio = std::log1p(mu / disp);  // log((disp + mu) / disp)
    double ll = -disp * log1p_ratio;
    if (o > 0) {
        double rising = 0.0;  // lgamma(o + disp) - lgamma(disp)
        if (o <= 64) {
            for (std::int64_t k = 0; k < o; ++k) rising += std::log(disp + static_cast<double>(k));
        } else {
            rising = std::lgamma(on + disp) - std::lgamma(disp);
        }
        ll += rising - std::lgamma(on + 1.0) + on * (eta - log_disp - log1p_ratio);
    }
    return ll;
}

struct Cell {
    double x;  // centred ln(predictor + 1)
    std::int64_t omitted;
    double weight;
};

// Sampler coordinates: centred intercept, slope, log dispersion. The
// intercept is reparameterised as intercept + slope * mean(x) so that the
// random walk does not have to follow the intercept/slope ridge; the map is
// linear with unit Jacobian and the priors are evaluated on the original
// intercept.
struct Target {
    std::vector<Cell> cells;
    double x_mean = 0.0;
    NegBinModelSpec spec;

    double slope(const std::array<double, 3>& s) const noexcept { return spec.fixed_slope.value_or(s[1]); }
    double log_disp(const std::array<double, 3>& s) const noexcept {
        return spec.fixed_dispersion ? std::log(*spec.fixed_dispersion) : s[2];
    }
    double intercept(const std::array<double, 3>& s) const noexcept { return s[0] - slope(s) * x_mean; }

    double log_density(const std::array<double, 3>& s) const noexcept {
        const double b = slope(s);
        const double l = log_disp(s);
        double lp = normal_logpdf(intercept(s), spec.intercept);
        if (!spec.fixed_slope) lp += normal_logpdf(b, spec.slope);
        if (!spec.fixed_dispersion) lp += normal_logpdf(l, spec.log_dispersion);
        for (const auto& c : cells) lp += c.weight * negbin_loglik_eta(c.omitted, s[0] + b * c.x, l);
        return std::isnan(lp) ? -std::numeric_limits<double>::infinity() : lp;
    }
};

Target make_target(const CitationErrorSample& sample, const NegBinModelSpec& spec) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> grouped;
    for (const auto& r : sample.rows) {
        if (r.observed < 0 || r.omitted < 0) throw ValidationError("citation error sample counts must be >= 0");
        const auto predictor = spec.direction == ModelKind::SecondKind ? r.observed : r.observed + r.omitted;
        ++grouped[{predictor, r.omitted}];
    }
    Target t;
    t.spec = spec;
    double total = 0.0;
    for (const auto& [key, n] : grouped) {
        t.x_mean += static_cast<double>(n) * std::log1p(static_cast<double>(key.first));
        total += static_cast<double>(n);
    }
    t.x_mean /= total;
    for (const auto& [key, n] : grouped) {
        t.cells.push_back({std::log1p(static_cast<double>(key.first)) - t.x_mean, key.second,
                           static_cast<double>(n)});
    }
    return t;
}

struct ChainOutput {
    std::vector<NegBinDraw> draws;
    double acceptance = 0.0;
};

ChainOutput run_chain(const Target& target, const McmcConfig& cfg, int chain_index, double mean_omitted) {
    Stream rng = substream(cfg.seed, {stream_tag::kMcmcChain, static_cast<std::uint64_t>(chain_index)});
    std::normal_distribution<double> normal(0.0, 1.0);

    std::array<bool, 3> free{true, !target.spec.fixed_slope.has_value(),
                             !target.spec.fixed_dispersion.has_value()};
    int dim = 0;
    for (bool f : free) dim += f ? 1 : 0;

    // over-dispersed start around a crude moment estimate
    std::array<double, 3> state{std::log(mean_omitted + 0.1) + 0.5 * normal(rng), 0.0, 0.0};
    if (free[1]) state[1] = 0.3 * normal(rng);
    if (free[2]) state[2] = 0.5 * normal(rng);
    double current = target.log_density(state);

    std::array<double, 3> scale{0.1, 0.1, 0.2};
    double log_lambda = std::log(2.38 / std::sqrt(static_cast<double>(dim)));

    // Warmup is split into four windows. After each of the first three the
    // diagonal scales are reset to the marginal sds seen in that window.
    const int window = std::max(1, cfg.warmup / 4);
    std::array<double, 3> w_sum{}, w_sq{};
    int w_count = 0, w_step = 0;

    auto step = [&]() {
        std::array<double, 3> proposal = state;
        const double lambda = std::exp(log_lambda);
        for (int k = 0; k < 3; ++k) {
            if (free[k]) proposal[k] += lambda * scale[k] * normal(rng);
        }
        const double candidate = target.log_density(proposal);
        const double log_u = std::log(rng.uniform());
        const bool accept = std::isfinite(candidate) && log_u < candidate - current;
        if (accept) {
            state = proposal;
            current = candidate;
        }
        return accept;
    };

    for (int it = 0; it < cfg.warmup; ++it) {
        const bool accepted = step();
        ++w_step;
        log_lambda += ((accepted ? 1.0 : 0.0) - cfg.target_acceptance) / std::pow(w_step + 1.0, 0.6);
        for (int k = 0; k < 3; ++k) {
            w_sum[k] += state[k];
            w_sq[k] += state[k] * state[k];
        }
        ++w_count;
        const bool window_end = (it + 1) % window == 0 && it + 1 < 4 * window && it + 1 < cfg.warmup;
        if (window_end) {
            for (int k = 0; k < 3; ++k) {
                if (!free[k]) continue;
                const double m = w_sum[k] / w_count;
                const double var = w_sq[k] / w_count - m * m;
                if (var > 1e-12) scale[k] = std::sqrt(var);
            }
            w_sum = {};
            w_sq = {};
            w_count = 0;
            w_step = 0;
            log_lambda = std::log(2.38 / std::sqrt(static_cast<double>(dim)));
        }
    }

    ChainOutput out;
    out.draws.reserve(static_cast<std::size_t>(cfg.keep));
    int accepted = 0;
    for (int it = 0; it < cfg.keep; ++it) {
        if (step()) ++accepted;
        out.draws.push_back({target.intercept(state), target.slope(state), std::exp(target.log_disp(state))});
    }
    out.acceptance = static_cast<double>(accepted) / cfg.keep;
    return out;
}

}  // namespace

double negbin_log_likelihood(std::int64_t omitted, double mean, double dispersion) noexcept {
    return negbin_loglik_eta(omitted, std::log(mean), std::log(dispersion));
}

NegBinPosterior fit_citation_error_model(const CitationErrorSample& sample, const NegBinModelSpec& spec,
                                         const McmcConfig& cfg, unsigned workers) {
    spec.validate();
    cfg.validate();
    if (sample.rows.size() < 2) throw ValidationError("fitting needs at least 2 sample rows");

    const Target target = make_target(sample, spec);
    double mean_omitted = 0.0;
    for (const auto& r : sample.rows) mean_omitted += static_cast<double>(r.omitted);
    mean_omitted /= static_cast<double>(sample.rows.size());

    std::vector<ChainOutput> chains(static_cast<std::size_t>(cfg.chains));
    parallel_for(chains.size(), workers, [&](std::size_t c) {
        chains[c] = run_chain(target, cfg, static_cast<int>(c), mean_omitted);
    });

    NegBinPosterior post;
    post.spec = spec;
    post.config = cfg;
    post.chains = cfg.chains;
    post.kept_per_chain = cfg.keep;
    post.draws.reserve(static_cast<std::size_t>(cfg.chains) * cfg.keep);
    for (const auto& c : chains) post.draws.insert(post.draws.end(), c.draws.begin(), c.draws.end());
    post.diagnostics = mcmc_diagnostics(post);
    for (std::size_t c = 0; c < chains.size(); ++c) post.diagnostics.acceptance_rate[c] = chains[c].acceptance;
    return post;
}

}  // namespace bibunc
