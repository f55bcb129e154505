#pragma once

#include <optional>
#include <span>
#include <vector>

namespace bibunc {

/// Median, central 95% interval and relative uncertainty of a replicate vector.
struct DistributionSummary {
    double median = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    /// 100 * (ci_high - ci_low) / median; absent when the median is 0.
    std::optional<double> relative_uncertainty_pct;
};

/// Quantile by linear interpolation between order statistics
/// (h = (n - 1) p). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double p);

/// NaN entries are ignored. Throws UsageError if no finite value remains.
DistributionSummary summarize(std::span<const double> replicates);

}  // namespace bibunc
