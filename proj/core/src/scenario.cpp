#include <bibunc/random.hpp>
#include <bibunc/sampling.hpp>
#include <bibunc/simulation.hpp>

#include <cmath>
#include <cstdio>
#include <random>

namespace bibunc {

void ScenarioConfig::validate() const {
    double total = 0.0;
    for (double p : mixture) {
        if (p < 0.0) throw ValidationError("document-type mixture probabilities must be >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ValidationError("document-type mixture must sum to 1");
    for (double s : scaling) {
        if (!(s > 0.0)) throw ValidationError("document-type scaling factors must be > 0");
    }
    if (!(log_sd >= 0.0)) throw ValidationError("lognormal scale must be >= 0");
}

std::vector<PublicationSet> generate_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    std::vector<PublicationSet> out;
    out.reserve(cfg.sets.size());
    for (const auto& spec : cfg.sets) {
        PublicationSet set{spec.name, spec.role, {}};
        set.members.reserve(spec.size);
        const auto set_key = hash_label(spec.name);
        for (std::size_t i = 0; i < spec.size; ++i) {
            Stream rng = substream(cfg.seed, {stream_tag::kScenario, set_key, i});
            std::normal_distribution<double> normal(0.0, 1.0);

            Publication p;
            char id[64];
            std::snprintf(id, sizeof id, "%s-%05zu", spec.name.c_str(), i + 1);
            p.id = id;
            p.unit = spec.name;
            p.doctype = sample_category(cfg.mixture, rng);
            const double location = spec.location * cfg.scaling[index_of(p.doctype)];
            const double value = std::exp(location + cfg.log_sd * normal(rng));
            const double discrete = cfg.discretization == Discretization::Floor ? std::floor(value) : std::round(value);
            p.citations = std::max<std::int64_t>(0, static_cast<std::int64_t>(discrete));
            set.members.push_back(std::move(p));
        }
        out.push_back(std::move(set));
    }
    return out;
}

}  // namespace bibunc
