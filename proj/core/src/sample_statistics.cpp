#include <bibunc/data_model.hpp>

#include <algorithm>
#include <cmath>

namespace bibunc {

namespace {
constexpr double kZ975 = 1.959963984540054;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

SampleStatistics sample_statistics(const CitationErrorSample& sample) {
    if (sample.rows.size() < 2) throw ValidationError("sample statistics need at least 2 rows");

    SampleStatistics s;
    s.rows = sample.rows.size();
    std::vector<double> observed, omitted;
    observed.reserve(s.rows);
    omitted.reserve(s.rows);
    std::size_t with_omitted = 0;
    for (const auto& r : sample.rows) {
        if (r.observed < 0 || r.omitted < 0) throw ValidationError("citation error sample counts must be >= 0");
        s.total_observed += r.observed;
        s.total_omitted += r.omitted;
        if (r.omitted > 0) ++with_omitted;
        observed.push_back(static_cast<double>(r.observed));
        omitted.push_back(static_cast<double>(r.omitted));
    }
    const double n = static_cast<double>(s.rows);
    if (s.total_observed > 0) {
        s.omitted_rate = static_cast<double>(s.total_omitted) / static_cast<double>(s.total_observed);
    } else if (s.total_omitted == 0) {
        s.omitted_rate = 0.0;
    }
    s.share_with_omitted = static_cast<double>(with_omitted) / n;
    s.mean_observed = static_cast<double>(s.total_observed) / n;
    s.mean_corrected = static_cast<double>(s.total_observed + s.total_omitted) / n;

    if (auto r = pearson(observed, omitted)) {
        Correlation c{*r, std::nullopt, std::nullopt};
        if (s.rows > 3) {
            if (std::abs(*r) >= 1.0) {
                c.ci_low = c.ci_high = *r;
            } else {
                const double z = std::atanh(*r);
                const double se = 1.0 / std::sqrt(n - 3.0);
                c.ci_low = std::tanh(z - kZ975 * se);
                c.ci_high = std::tanh(z + kZ975 * se);
            }
        }
        s.correlation = c;
    }
    return s;
}

}  // namespace bibunc
