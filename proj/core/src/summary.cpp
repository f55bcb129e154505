#include <bibunc/summary.hpp>

#include <bibunc/data_model.hpp>

#include <algorithm>
#include <cmath>

namespace bibunc {

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw UsageError("quantile of an empty vector");
    const double h = static_cast<double>(sorted.size() - 1) * std::clamp(p, 0.0, 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

DistributionSummary summarize(std::span<const double> replicates) {
    std::vector<double> values;
    values.reserve(replicates.size());
    for (double v : replicates) {
        if (!std::isnan(v)) values.push_back(v);
    }
    if (values.empty()) throw UsageError("cannot summarize an empty replicate vector");
    std::sort(values.begin(), values.end());

    DistributionSummary s;
    s.median = quantile_sorted(values, 0.5);
    s.ci_low = quantile_sorted(values, 0.025);
    s.ci_high = quantile_sorted(values, 0.975);
    if (s.median != 0.0) s.relative_uncertainty_pct = 100.0 * (s.ci_high - s.ci_low) / s.median;
    return s;
}

}  // namespace bibunc
