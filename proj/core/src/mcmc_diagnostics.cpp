#include <bibunc/error_models.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace bibunc {

namespace {

// Halves each chain, dropping the middle draw of odd-length chains.
std::vector<std::vector<double>> split_chains(std::span<const std::vector<double>> chains) {
    std::vector<std::vector<double>> out;
    for (const auto& c : chains) {
        const std::size_t half = c.size() / 2;
        out.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(half));
        out.emplace_back(c.end() - static_cast<std::ptrdiff_t>(half), c.end());
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double m) {
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

bool equal_lengths(std::span<const std::vector<double>> chains) {
    return std::all_of(chains.begin(), chains.end(),
                       [&](const auto& c) { return c.size() == chains.front().size(); });
}

}  // namespace

std::optional<double> split_rhat(std::span<const std::vector<double>> chains) {
    if (chains.size() < 2 || !equal_lengths(chains) || chains.front().size() < 4) return std::nullopt;
    const auto split = split_chains(chains);
    const double m = static_cast<double>(split.size());
    const double n = static_cast<double>(split.front().size());

    std::vector<double> means;
    double w = 0.0;
    for (const auto& c : split) {
        means.push_back(mean_of(c));
        w += sample_variance(c, means.back());
    }
    w /= m;
    const double grand = mean_of(means);
    double b_over_n = 0.0;
    for (double mu : means) b_over_n += (mu - grand) * (mu - grand);
    b_over_n /= (m - 1.0);

    if (!(w > 0.0)) return b_over_n > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    const double var_plus = (n - 1.0) / n * w + b_over_n;
    return std::sqrt(var_plus / w);
}

double effective_sample_size(std::span<const std::vector<double>> chains) {
    if (chains.empty() || !equal_lengths(chains) || chains.front().size() < 4) {
        double total = 0.0;
        for (const auto& c : chains) total += static_cast<double>(c.size());
        return total;
    }
    const auto split = split_chains(chains);
    const std::size_t m = split.size();
    const std::size_t n = split.front().size();
    const double nd = static_cast<double>(n);

    std::vector<double> means(m);
    for (std::size_t c = 0; c < m; ++c) means[c] = mean_of(split[c]);

    auto autocov = [&](std::size_t c, std::size_t lag) {
        double s = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) s += (split[c][i] - means[c]) * (split[c][i + lag] - means[c]);
        return s / nd;
    };
    auto mean_autocov = [&](std::size_t lag) {
        double s = 0.0;
        for (std::size_t c = 0; c < m; ++c) s += autocov(c, lag);
        return s / static_cast<double>(m);
    };

    const double mean_var = mean_autocov(0) * nd / (nd - 1.0);
    double var_plus = mean_var * (nd - 1.0) / nd;
    if (m > 1) {
        const double grand = std::accumulate(means.begin(), means.end(), 0.0) / static_cast<double>(m);
        double b = 0.0;
        for (double mu : means) b += (mu - grand) * (mu - grand);
        var_plus += b / static_cast<double>(m - 1);
    }
    const double total = static_cast<double>(m * n);
    if (!(var_plus > 0.0)) return total;

    auto rho = [&](std::size_t lag) { return 1.0 - (mean_var - mean_autocov(lag)) / var_plus; };

    // Geyer's initial positive and monotone sequence estimator.
    double tau = -1.0;
    double prev_pair = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t + 1 < n; t += 2) {
        double pair = rho(t) + rho(t + 1);
        if (pair < 0.0) break;
        pair = std::min(pair, prev_pair);
        tau += 2.0 * pair;
        prev_pair = pair;
    }
    tau = std::max(tau, 1.0 / std::log10(total));
    return total / tau;
}

McmcDiagnostics mcmc_diagnostics(const NegBinPosterior& posterior) {
    McmcDiagnostics d;
    const int chains = posterior.chains;
    const auto n = static_cast<std::size_t>(posterior.kept_per_chain);
    if (chains < 1 || posterior.draws.size() != static_cast<std::size_t>(chains) * n) {
        throw UsageError("posterior draw count does not match chains x kept");
    }

    std::array<std::vector<std::vector<double>>, 3> per_param;
    for (auto& p : per_param) p.resize(static_cast<std::size_t>(chains));
    d.acceptance_rate.assign(static_cast<std::size_t>(chains), 0.0);
    for (int c = 0; c < chains; ++c) {
        const auto draws = posterior.chain(c);
        std::size_t moves = 0;
        for (std::size_t i = 0; i < draws.size(); ++i) {
            per_param[0][c].push_back(draws[i].intercept);
            per_param[1][c].push_back(draws[i].slope);
            per_param[2][c].push_back(std::log(draws[i].dispersion));
            if (i > 0 && (draws[i].intercept != draws[i - 1].intercept || draws[i].slope != draws[i - 1].slope ||
                          draws[i].dispersion != draws[i - 1].dispersion)) {
                ++moves;
            }
        }
        if (draws.size() > 1) d.acceptance_rate[c] = static_cast<double>(moves) / static_cast<double>(draws.size() - 1);
    }

    const std::array<bool, 3> pinned{false, posterior.spec.fixed_slope.has_value(),
                                     posterior.spec.fixed_dispersion.has_value()};
    std::array<ParameterDiagnostics*, 3> out{&d.intercept, &d.slope, &d.dispersion};
    d.converged = true;
    for (int k = 0; k < 3; ++k) {
        if (pinned[k]) {
            out[k]->ess = static_cast<double>(posterior.draws.size());
            continue;
        }
        out[k]->rhat = split_rhat(per_param[k]);
        out[k]->ess = effective_sample_size(per_param[k]);
        if (out[k]->rhat && !(*out[k]->rhat < kRhatThreshold)) d.converged = false;
    }
    return d;
}

}  // namespace bibunc
