#include <bibunc/serialization.hpp>

#include <fstream>
#include <limits>

namespace bibunc {

using nlohmann::json;

namespace {

json prior_json(const NormalPrior& p) { return {{"mean", p.mean}, {"sd", p.sd}}; }

NormalPrior prior_from(const json& j) { return {j.at("mean").get<double>(), j.at("sd").get<double>()}; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

ModelKind kind_from(const json& j) {
    const auto text = j.get<std::string>();
    auto kind = parse_model_kind(text);
    if (!kind) throw ValidationError("unknown model direction '" + text + "'");
    return *kind;
}

void expect_format(const json& j, const char* format) {
    if (!j.is_object() || j.value("format", "") != format) {
        throw ValidationError(std::string("expected a '") + format + "' document");
    }
    if (j.value("version", 0) != kPosteriorSchemaVersion) {
        throw ValidationError(std::string("unsupported '") + format + "' schema version");
    }
}

json parameter_json(const ParameterDiagnostics& p) { return {{"rhat", optional_json(p.rhat)}, {"ess", p.ess}}; }

ParameterDiagnostics parameter_from(const json& j) {
    return {optional_from(j, "rhat"), j.at("ess").get<double>()};
}

}  // namespace

json to_json(const NegBinModelSpec& spec) {
    return {
        {"direction", std::string(to_string(spec.direction))},
        {"predictor_transform", "log1p"},
        {"intercept_prior", prior_json(spec.intercept)},
        {"slope_prior", prior_json(spec.slope)},
        {"log_dispersion_prior", prior_json(spec.log_dispersion)},
        {"fixed_slope", optional_json(spec.fixed_slope)},
        {"fixed_dispersion", optional_json(spec.fixed_dispersion)},
    };
}

NegBinModelSpec negbin_spec_from_json(const json& j) {
    NegBinModelSpec spec;
    spec.direction = kind_from(j.at("direction"));
    spec.intercept = prior_from(j.at("intercept_prior"));
    spec.slope = prior_from(j.at("slope_prior"));
    spec.log_dispersion = prior_from(j.at("log_dispersion_prior"));
    spec.fixed_slope = optional_from(j, "fixed_slope");
    spec.fixed_dispersion = optional_from(j, "fixed_dispersion");
    spec.validate();
    return spec;
}

json to_json(const McmcDiagnostics& d) {
    return {
        {"rhat_threshold", kRhatThreshold},
        {"converged", d.converged},
        {"intercept", parameter_json(d.intercept)},
        {"slope", parameter_json(d.slope)},
        {"dispersion", parameter_json(d.dispersion)},
        {"acceptance_rate", d.acceptance_rate},
    };
}

json to_json(const NegBinPosterior& p) {
    std::vector<double> b0, b1, theta;
    b0.reserve(p.draws.size());
    b1.reserve(p.draws.size());
    theta.reserve(p.draws.size());
    for (const auto& d : p.draws) {
        b0.push_back(d.intercept);
        b1.push_back(d.slope);
        theta.push_back(d.dispersion);
    }
    return {
        {"format", kNegBinPosteriorFormat},
        {"version", kPosteriorSchemaVersion},
        {"spec", to_json(p.spec)},
        {"mcmc",
         {{"chains", p.config.chains},
          {"warmup", p.config.warmup},
          {"keep", p.config.keep},
          {"seed", p.config.seed},
          {"target_acceptance", p.config.target_acceptance}}},
        {"draws", {{"intercept", b0}, {"slope", b1}, {"dispersion", theta}}},
        {"diagnostics", to_json(p.diagnostics)},
    };
}

NegBinPosterior negbin_posterior_from_json(const json& j) {
    expect_format(j, kNegBinPosteriorFormat);
    NegBinPosterior p;
    p.spec = negbin_spec_from_json(j.at("spec"));
    const auto& m = j.at("mcmc");
    p.config.chains = m.at("chains").get<int>();
    p.config.warmup = m.at("warmup").get<int>();
    p.config.keep = m.at("keep").get<int>();
    p.config.seed = m.at("seed").get<std::uint64_t>();
    p.config.target_acceptance = m.at("target_acceptance").get<double>();
    p.chains = p.config.chains;
    p.kept_per_chain = p.config.keep;

    const auto b0 = j.at("draws").at("intercept").get<std::vector<double>>();
    const auto b1 = j.at("draws").at("slope").get<std::vector<double>>();
    const auto theta = j.at("draws").at("dispersion").get<std::vector<double>>();
    if (b0.size() != b1.size() || b0.size() != theta.size()) {
        throw ValidationError("posterior draw arrays differ in length");
    }
    if (b0.size() != static_cast<std::size_t>(p.chains) * static_cast<std::size_t>(p.kept_per_chain)) {
        throw ValidationError("posterior draw count does not equal chains x keep");
    }
    p.draws.reserve(b0.size());
    for (std::size_t i = 0; i < b0.size(); ++i) {
        if (!(theta[i] > 0.0)) throw ValidationError("posterior dispersion draws must be > 0");
        p.draws.push_back({b0[i], b1[i], theta[i]});
    }
    const auto& d = j.at("diagnostics");
    p.diagnostics.converged = d.at("converged").get<bool>();
    p.diagnostics.intercept = parameter_from(d.at("intercept"));
    p.diagnostics.slope = parameter_from(d.at("slope"));
    p.diagnostics.dispersion = parameter_from(d.at("dispersion"));
    p.diagnostics.acceptance_rate = d.at("acceptance_rate").get<std::vector<double>>();
    return p;
}

json to_json(const DirichletPosterior& p) {
    json rows = json::object();
    for (auto cond : kAllDocTypes) {
        rows[std::string(to_string(cond))] = std::vector<double>(p.row(cond).begin(), p.row(cond).end());
    }
    return {
        {"format", kDirichletPosteriorFormat},
        {"version", kPosteriorSchemaVersion},
        {"direction", std::string(to_string(p.direction))},
        {"conditioning", p.direction == ModelKind::SecondKind ? "observed_type" : "true_type"},
        {"categories", {"article", "review", "letter", "other"}},
        {"pseudocount", p.pseudocount},
        {"concentration", rows},
    };
}

DirichletPosterior dirichlet_posterior_from_json(const json& j) {
    expect_format(j, kDirichletPosteriorFormat);
    DirichletPosterior p;
    p.direction = kind_from(j.at("direction"));
    p.pseudocount = j.at("pseudocount").get<double>();
    const auto& rows = j.at("concentration");
    for (auto cond : kAllDocTypes) {
        const auto values = rows.at(std::string(to_string(cond))).get<std::vector<double>>();
        if (values.size() != kDocTypeCount) throw ValidationError("Dirichlet rows need four concentrations");
        double total = 0.0;
        for (std::size_t k = 0; k < kDocTypeCount; ++k) {
            if (values[k] < 0.0) throw ValidationError("Dirichlet concentrations must be >= 0");
            p.concentration[index_of(cond)][k] = values[k];
            total += values[k];
        }
        if (!(total > 0.0)) throw ValidationError("Dirichlet row has no positive concentration");
    }
    return p;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

NegBinPosterior load_negbin_posterior(const std::filesystem::path& path) {
    try {
        return negbin_posterior_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

DirichletPosterior load_dirichlet_posterior(const std::filesystem::path& path) {
    try {
        return dirichlet_posterior_from_json(read_json_file(path));
    } catch (const json::exception& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

}  // namespace bibunc
