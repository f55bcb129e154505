#include <bibunc/predictive.hpp>
#include <bibunc/random.hpp>

#include "csv.hpp"

#include <algorithm>
#include <ostream>

namespace bibunc {

namespace {

void require_draws(const NegBinPosterior& posterior) {
    if (posterior.draws.empty()) throw UsageError("citation posterior has no draws");
}

void require_direction(const NegBinPosterior& posterior, ModelKind kind, const char* what) {
    if (posterior.spec.direction != kind) {
        throw UsageError(std::string(what) + " needs a " + std::string(to_string(kind)) + " citation model, got " +
                         std::string(to_string(posterior.spec.direction)));
    }
}

}  // namespace

std::vector<std::int64_t> predict_omitted(const NegBinPosterior& posterior, std::int64_t c, std::size_t n,
                                          std::uint64_t seed) {
    require_draws(posterior);
    if (c < 0) throw UsageError("citation count must be >= 0");
    std::vector<std::int64_t> out(n);
    const double predictor = static_cast<double>(c);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& theta = posterior.draws[j % posterior.draws.size()];
        Stream rng = substream(seed, {stream_tag::kPredictive, j});
        out[j] = sample_negbin(theta.mean_at(predictor), theta.dispersion, rng);
    }
    return out;
}

std::vector<std::int64_t> predict_error_free_citations(const NegBinPosterior& posterior, std::int64_t c_new,
                                                       std::size_t n, std::uint64_t seed) {
    require_direction(posterior, ModelKind::SecondKind, "error-free prediction");
    auto draws = predict_omitted(posterior, c_new, n, seed);
    for (auto& d : draws) d += c_new;
    return draws;
}

std::vector<std::int64_t> predict_error_affected_citations(const NegBinPosterior& posterior, std::int64_t c_star,
                                                           std::size_t n, std::uint64_t seed) {
    require_direction(posterior, ModelKind::FirstKind, "error-affected prediction");
    auto draws = predict_omitted(posterior, c_star, n, seed);
    for (auto& d : draws) d = std::max<std::int64_t>(0, c_star - d);
    return draws;
}

std::vector<DocType> predict_doctype(const DirichletPosterior& posterior, DocType conditioning, std::size_t n,
                                     std::uint64_t seed) {
    const auto& row = posterior.row(conditioning);
    double total = 0.0;
    for (double a : row) total += a;
    if (!(total > 0.0)) {
        throw UsageError("document-type model has no data for conditioning type '" +
                         std::string(to_string(conditioning)) + "'");
    }
    std::vector<DocType> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        Stream rng = substream(seed, {stream_tag::kPredictive, j, index_of(conditioning) + 1});
        out[j] = sample_category(sample_dirichlet(row, rng), rng);
    }
    return out;
}

void write_draws_header(std::ostream& out) { out << "iteration,publication_id,citations,doctype\n"; }

void write_draws(std::ostream& out, std::span<const PredictiveDraw> draws) {
    for (const auto& d : draws) {
        out << d.iteration << ',' << detail::csv_escape(d.publication_id) << ',' << d.citations << ','
            << to_string(d.doctype) << '\n';
    }
}

}  // namespace bibunc
