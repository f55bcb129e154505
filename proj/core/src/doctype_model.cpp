#include <bibunc/error_models.hpp>

#include <cmath>
#include <string>

namespace bibunc {

DocTypeProbabilities DirichletPosterior::mean(DocType conditioning) const noexcept {
    const auto& a = row(conditioning);
    double total = 0.0;
    for (double v : a) total += v;
    DocTypeProbabilities p{};
    for (std::size_t k = 0; k < kDocTypeCount; ++k) p[k] = a[k] / total;
    return p;
}

DirichletPosterior fit_doctype_error_model(const DocTypeConfusionTable& table, double pseudocount,
                                           ModelKind direction) {
    if (!(pseudocount > 0.0) || !std::isfinite(pseudocount)) {
        throw ValidationError("Dirichlet pseudo-count must be positive and finite");
    }
    DirichletPosterior post;
    post.direction = direction;
    post.pseudocount = pseudocount;
    for (auto cond : kAllDocTypes) {
        for (auto pred : kAllDocTypes) {
            // second kind: observed type predicts the true type
            const auto n = direction == ModelKind::SecondKind ? table.count(pred, cond) : table.count(cond, pred);
            if (n < 0) throw ValidationError("confusion table counts must be non-negative");
            post.concentration[index_of(cond)][index_of(pred)] = static_cast<double>(n) + pseudocount;
        }
    }
    return post;
}

DirichletPosterior identity_doctype_model(ModelKind direction) {
    DirichletPosterior post;
    post.direction = direction;
    post.pseudocount = 0.0;
    for (auto cond : kAllDocTypes) post.concentration[index_of(cond)][index_of(cond)] = 1.0;
    return post;
}

}  // namespace bibunc
