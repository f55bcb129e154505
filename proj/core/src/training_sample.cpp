#include <bibunc/random.hpp>
#include <bibunc/simulation.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace bibunc {

namespace {

constexpr double kObservedLogSd = 1.0;
constexpr double kTolerance = 0.05;

// Observed counts: lognormal draws rescaled so that they sum to `total`,
// remainders handed to the largest fractional parts.
std::vector<std::int64_t> observed_counts(std::size_t n, double target_mean, std::int64_t total, Stream& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double meanlog = std::log(std::max(target_mean, 1e-9)) - 0.5 * kObservedLogSd * kObservedLogSd;
    std::vector<double> raw(n);
    for (auto& x : raw) x = std::exp(meanlog + kObservedLogSd * normal(rng));
    const double sum = std::accumulate(raw.begin(), raw.end(), 0.0);

    std::vector<std::int64_t> c(n);
    std::vector<std::pair<double, std::size_t>> frac(n);
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double scaled = raw[i] * static_cast<double>(total) / sum;
        c[i] = static_cast<std::int64_t>(std::floor(scaled));
        frac[i] = {scaled - static_cast<double>(c[i]), i};
        assigned += c[i];
    }
    std::stable_sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::int64_t k = 0; k < total - assigned; ++k) ++c[frac[static_cast<std::size_t>(k) % n].second];
    return c;
}

}  // namespace

SynthesizedSample synthesize_training_sample(const MissedCitationMarginal& marginal, double target_mean_c,
                                             double target_r, std::uint64_t seed) {
    const auto records = marginal.records();
    if (records <= 0) throw UsageError("marginal histogram is empty");
    if (!(target_mean_c >= 0.0)) throw UsageError("target mean citation count must be >= 0");
    const auto n = static_cast<std::size_t>(records);

    std::vector<std::int64_t> omitted;
    omitted.reserve(n);
    for (const auto& [missed, freq] : marginal.histogram) {
        if (missed < 0 || freq < 0) throw ValidationError("marginal histogram entries must be >= 0");
        omitted.insert(omitted.end(), static_cast<std::size_t>(freq), missed);
    }
    std::sort(omitted.begin(), omitted.end());

    Stream rng = substream(seed, {stream_tag::kTraining});
    const auto total = static_cast<std::int64_t>(std::llround(target_mean_c * static_cast<double>(n)));
    const auto observed = observed_counts(n, target_mean_c, total, rng);

    // standardized ranks of the observed counts (ties broken by position)
    std::vector<std::size_t> by_observed(n);
    std::iota(by_observed.begin(), by_observed.end(), 0);
    std::stable_sort(by_observed.begin(), by_observed.end(),
                     [&](auto a, auto b) { return observed[a] < observed[b]; });
    std::vector<double> score(n);
    const double mid = 0.5 * static_cast<double>(n - 1);
    const double spread = std::max(1.0, std::sqrt((static_cast<double>(n) * n - 1.0) / 12.0));
    for (std::size_t rank = 0; rank < n; ++rank) score[by_observed[rank]] = (static_cast<double>(rank) - mid) / spread;

    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> noise(n);
    for (auto& e : noise) e = normal(rng);

    std::vector<double> xs(observed.begin(), observed.end());
    std::vector<double> ys(n);
    std::vector<std::size_t> order(n);
    std::vector<double> latent(n);
    auto couple = [&](double rho) {
        const double w = std::sqrt(std::max(0.0, 1.0 - rho * rho));
        for (std::size_t i = 0; i < n; ++i) latent[i] = rho * score[i] + w * noise[i];
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return latent[a] < latent[b]; });
        for (std::size_t k = 0; k < n; ++k) ys[order[k]] = static_cast<double>(omitted[k]);
        return pearson(xs, ys);
    };

    double best_rho = 0.0;
    std::optional<double> best_r = couple(0.0);
    if (best_r) {
        for (int step = -200; step <= 200; ++step) {
            const double rho = step / 200.0;
            const auto r = couple(rho);
            if (r && std::abs(*r - target_r) < std::abs(*best_r - target_r)) {
                best_r = r;
                best_rho = rho;
            }
        }
    }

    SynthesizedSample out;
    out.achieved_r = couple(best_rho);
    out.sample.rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.sample.rows.push_back({observed[i], static_cast<std::int64_t>(ys[i])});
    if (!out.achieved_r) {
        out.warning = "correlation undefined: a column has zero variance";
    } else if (std::abs(*out.achieved_r - target_r) > kTolerance) {
        out.warning = "target correlation " + std::to_string(target_r) + " not reachable; best achieved " +
                      std::to_string(*out.achieved_r);
    }
    return out;
}

DocTypeConfusionTable synthetic_confusion_table() {
    using enum DocType;
    DocTypeConfusionTable t;
    // observed article
    t.set(Article, Article, 965);
    t.set(Review, Article, 22);
    t.set(Letter, Article, 9);
    t.set(Other, Article, 4);
    // observed review
    t.set(Article, Review, 13);
    t.set(Review, Review, 85);
    t.set(Other, Review, 2);
    // observed letter
    t.set(Article, Letter, 18);
    t.set(Letter, Letter, 27);
    t.set(Other, Letter, 5);
    // observed other
    t.set(Article, Other, 12);
    t.set(Review, Other, 1);
    t.set(Letter, Other, 2);
    t.set(Other, Other, 285);
    return t;
}

}  // namespace bibunc
