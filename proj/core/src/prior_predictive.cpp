#include <bibunc/error_models.hpp>
#include <bibunc/random.hpp>
#include <bibunc/summary.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace bibunc {

namespace {

constexpr double kZ975 = 1.959963984540054;

Quantiles quantiles_of(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    return {quantile_sorted(v, 0.025), quantile_sorted(v, 0.5), quantile_sorted(v, 0.975)};
}

}  // namespace

PriorPredictiveSummary prior_predictive_check(const NegBinModelSpec& spec, std::uint64_t seed,
                                              std::span<const double> predictor_grid, std::size_t draws) {
    spec.validate();
    if (draws == 0) throw UsageError("prior predictive check needs at least one draw");

    Stream rng = substream(seed, {stream_tag::kPrior});
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<NegBinDraw> params(draws);
    std::vector<double> baseline(draws);
    for (std::size_t i = 0; i < draws; ++i) {
        auto& p = params[i];
        p.intercept = spec.intercept.mean + spec.intercept.sd * normal(rng);
        p.slope = spec.fixed_slope ? *spec.fixed_slope : spec.slope.mean + spec.slope.sd * normal(rng);
        p.dispersion = spec.fixed_dispersion
                           ? *spec.fixed_dispersion
                           : std::exp(spec.log_dispersion.mean + spec.log_dispersion.sd * normal(rng));
        baseline[i] = std::exp(p.intercept);
    }

    PriorPredictiveSummary out;
    out.draws = draws;
    out.baseline = quantiles_of(baseline);
    out.baseline_exact = {std::exp(spec.intercept.mean - kZ975 * spec.intercept.sd), std::exp(spec.intercept.mean),
                          std::exp(spec.intercept.mean + kZ975 * spec.intercept.sd)};

    std::vector<double> means(draws), counts(draws);
    for (std::size_t g = 0; g < predictor_grid.size(); ++g) {
        PriorPredictivePoint point;
        point.predictor = predictor_grid[g];
        std::size_t zeros = 0;
        for (std::size_t i = 0; i < draws; ++i) {
            means[i] = params[i].mean_at(point.predictor);
            const auto o = sample_negbin(means[i], params[i].dispersion, rng);
            counts[i] = static_cast<double>(o);
            if (o == 0) ++zeros;
        }
        point.share_zero = static_cast<double>(zeros) / static_cast<double>(draws);
        point.mean = quantiles_of(means);
        point.counts = quantiles_of(counts);
        out.grid.push_back(point);
    }
    return out;
}

}  // namespace bibunc
