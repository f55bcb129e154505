#pragma once

#include <bibunc/data_model.hpp>
#include <bibunc/random.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace bibunc {

using DocTypeProbabilities = std::array<double, kDocTypeCount>;

/// NegativeBinomial(mean, dispersion) with variance mean + mean^2 / dispersion,
/// drawn as a gamma-Poisson mixture. An infinite dispersion gives Poisson(mean).
inline std::int64_t sample_negbin(double mean, double dispersion, Stream& rng) {
    if (!(mean > 0.0)) return 0;
    double rate = mean;
    if (std::isfinite(dispersion)) {
        std::gamma_distribution<double> gamma(dispersion, mean / dispersion);
        rate = gamma(rng);
        if (!(rate > 0.0)) return 0;
    }
    std::poisson_distribution<std::int64_t> poisson(rate);
    return poisson(rng);
}

inline DocTypeProbabilities sample_dirichlet(const DocTypeProbabilities& concentration, Stream& rng) {
    DocTypeProbabilities p{};
    double total = 0.0;
    for (std::size_t k = 0; k < kDocTypeCount; ++k) {
        if (!(concentration[k] > 0.0)) continue;  // structural zero
        std::gamma_distribution<double> gamma(concentration[k], 1.0);
        p[k] = gamma(rng);
        total += p[k];
    }
    if (!(total > 0.0)) {
        // every shape so small that all draws underflowed: fall back to the mode
        std::size_t best = 0;
        for (std::size_t k = 1; k < kDocTypeCount; ++k) {
            if (concentration[k] > concentration[best]) best = k;
        }
        p.fill(0.0);
        p[best] = 1.0;
        return p;
    }
    for (auto& v : p) v /= total;
    return p;
}

inline DocType sample_category(const DocTypeProbabilities& probabilities, Stream& rng) {
    double u = rng.uniform();
    std::size_t last = 0;
    for (std::size_t k = 0; k < kDocTypeCount; ++k) {
        if (!(probabilities[k] > 0.0)) continue;
        if (u < probabilities[k]) return kAllDocTypes[k];
        u -= probabilities[k];
        last = k;
    }
    // rounding left u just past the cumulative total
    return kAllDocTypes[last];
}

}  // namespace bibunc
