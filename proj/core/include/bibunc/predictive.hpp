#pragma once

#include <bibunc/data_model.hpp>
#include <bibunc/error_models.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bibunc {

// Posterior-predictive draws for single items. Draw j uses posterior
// parameter draw j (cycled when n exceeds the stored draws) and its own
// random stream keyed by (seed, j), so parameter uncertainty and sampling
// noise both reach the prediction.

/// Omitted-citation counts at predictor count c.
std::vector<std::int64_t> predict_omitted(const NegBinPosterior& posterior, std::int64_t c, std::size_t n,
                                          std::uint64_t seed);

/// c_new + omitted; every draw is >= c_new. Requires a second-kind model.
std::vector<std::int64_t> predict_error_free_citations(const NegBinPosterior& posterior, std::int64_t c_new,
                                                       std::size_t n, std::uint64_t seed);

/// max(0, c_star - omitted); every draw lies in [0, c_star]. Requires a
/// first-kind model.
std::vector<std::int64_t> predict_error_affected_citations(const NegBinPosterior& posterior, std::int64_t c_star,
                                                           std::size_t n, std::uint64_t seed);

/// Compound Dirichlet-categorical draws: each draw samples a probability
/// vector from the conditioning row, then a type from that vector.
std::vector<DocType> predict_doctype(const DirichletPosterior& posterior, DocType conditioning, std::size_t n,
                                     std::uint64_t seed);

/// Per-item audit record of one Monte Carlo iteration.
struct PredictiveDraw {
    std::size_t iteration = 0;
    std::string publication_id;
    std::int64_t citations = 0;
    DocType doctype = DocType::Other;
};

/// `iteration,publication_id,citations,doctype`
void write_draws_header(std::ostream& out);
void write_draws(std::ostream& out, std::span<const PredictiveDraw> draws);

}  // namespace bibunc
