#include "bibunc/commands.hpp"
#include "bibunc/manifest.hpp"

#include <bibunc/data_model.hpp>
#include <bibunc/error_models.hpp>
#include <bibunc/parallel.hpp>
#include <bibunc/report.hpp>
#include <bibunc/serialization.hpp>
#include <bibunc/simulation.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bibunc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const CLI::IsMember kDirections{{"second-kind", "first-kind"}};
const CLI::IsMember kKeyModes{{"doctype", "doctype-year-field"}};
const CLI::IsMember kUniverses{{"pooled", "reference"}};

unsigned resolve_workers(unsigned requested) { return requested > 0 ? requested : default_worker_count(); }

void add_workers(CLI::App* cmd, unsigned& workers) {
    cmd->add_option("--workers", workers,
                    "Worker threads; 0 uses $BIBUNC_WORKERS or the hardware thread count. Results do not "
                    "depend on this value")
        ->envname("BIBUNC_WORKERS")
        ->check(CLI::NonNegativeNumber);
}

void add_mcmc(CLI::App* cmd, McmcFlags& m) {
    cmd->add_option("--chains", m.chains, "MCMC chains")->check(CLI::PositiveNumber);
    cmd->add_option("--warmup", m.warmup, "MCMC warmup iterations per chain (>= 100)")->check(CLI::Range(100, 1 << 30));
    cmd->add_option("--keep", m.keep, "MCMC kept draws per chain (>= 100)")->check(CLI::Range(100, 1 << 30));
}

McmcConfig mcmc_config(const McmcFlags& m, std::uint64_t seed) {
    McmcConfig cfg;
    cfg.chains = m.chains;
    cfg.warmup = m.warmup;
    cfg.keep = m.keep;
    cfg.seed = seed;
    return cfg;
}

template <class Fn>
void write_stream_file(const fs::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    fn(out);
}

void print_sample_statistics(std::ostream& out, const SampleStatistics& s) {
    char buf[256];
    out << "records:                 " << s.rows << '\n';
    out << "total observed:          " << s.total_observed << '\n';
    out << "total omitted:           " << s.total_omitted << '\n';
    if (s.omitted_rate) {
        std::snprintf(buf, sizeof buf, "omitted rate:            %.2f%%\n", 100.0 * *s.omitted_rate);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "share with >= 1 omitted: %.2f%%\n", 100.0 * s.share_with_omitted);
    out << buf;
    std::snprintf(buf, sizeof buf, "mean citations:          %.2f -> %.2f\n", s.mean_observed, s.mean_corrected);
    out << buf;
    if (s.correlation) {
        std::snprintf(buf, sizeof buf, "pearson r:               %.3f", s.correlation->r);
        out << buf;
        if (s.correlation->ci_low) {
            std::snprintf(buf, sizeof buf, " (95%% CI %.3f, %.3f)", *s.correlation->ci_low, *s.correlation->ci_high);
            out << buf;
        }
        out << '\n';
    } else {
        out << "pearson r:               undefined (zero variance)\n";
    }
}

json statistics_json(const SampleStatistics& s) {
    json j{{"records", s.rows},
           {"total_observed", s.total_observed},
           {"total_omitted", s.total_omitted},
           {"omitted_rate", s.omitted_rate ? json(*s.omitted_rate) : json(nullptr)},
           {"share_with_omitted", s.share_with_omitted},
           {"mean_observed", s.mean_observed},
           {"mean_corrected", s.mean_corrected}};
    if (s.correlation) {
        j["correlation"] = {{"r", s.correlation->r},
                            {"ci_low", s.correlation->ci_low ? json(*s.correlation->ci_low) : json(nullptr)},
                            {"ci_high", s.correlation->ci_high ? json(*s.correlation->ci_high) : json(nullptr)}};
    } else {
        j["correlation"] = nullptr;
    }
    return j;
}

}  // namespace

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

CLI::App* add_fit(CLI::App& app, FitOptions& o) {
    auto* cmd = app.add_subcommand("fit", "Fit the citation and/or document-type error models");
    cmd->add_option("--citation-sample", o.citation_sample,
                    "CSV with header observed_citations,omitted_citations");
    cmd->add_option("--doctype-confusion", o.doctype_confusion, "CSV with header true_type,observed_type,count");
    cmd->add_option("--direction", o.direction,
                    "second-kind predicts error-free values, first-kind injects errors")
        ->check(kDirections);
    cmd->add_option("--seed", o.seed, "Random seed");
    add_mcmc(cmd, o.mcmc);
    cmd->add_option("--pseudocount", o.pseudocount, "Dirichlet prior pseudocount per cell")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--intercept-prior-sd", o.intercept_sd, "Sd of the normal prior on the intercept")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--slope-prior-sd", o.slope_sd, "Sd of the normal prior on the slope")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--log-dispersion-prior-sd", o.log_dispersion_sd,
                    "Sd of the normal prior on the log dispersion")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Output directory for posterior files and the run manifest")->required();
    cmd->add_flag("--strict", o.strict, "Exit with code 3 when any R-hat is >= 1.05");
    add_workers(cmd, o.workers);
    return cmd;
}

int run_fit(const CLI::App& cmd, const FitOptions& o) {
    if (o.citation_sample.empty() && o.doctype_confusion.empty()) {
        throw UsageError("fit needs --citation-sample and/or --doctype-confusion");
    }
    const auto direction = *parse_model_kind(o.direction);
    const json manifest = make_manifest(cmd);
    const fs::path out = o.out;
    fs::create_directories(out);

    bool converged = true;
    if (!o.citation_sample.empty()) {
        const auto sample = load_citation_error_sample(o.citation_sample);
        NegBinModelSpec spec;
        spec.direction = direction;
        spec.intercept.sd = o.intercept_sd;
        spec.slope.sd = o.slope_sd;
        spec.log_dispersion.sd = o.log_dispersion_sd;
        const auto posterior =
            fit_citation_error_model(sample, spec, mcmc_config(o.mcmc, o.seed), resolve_workers(o.workers));
        write_json_file(out / "citation_posterior.json", to_json(posterior));
        std::cout << "Citation error model (" << to_string(direction) << "), " << posterior.draws.size()
                  << " draws\n";
        render_diagnostics(std::cout, posterior.diagnostics);
        converged = posterior.diagnostics.converged;
    }
    if (!o.doctype_confusion.empty()) {
        const auto table = load_doctype_confusion(o.doctype_confusion);
        const auto posterior = fit_doctype_error_model(table, o.pseudocount, direction);
        write_json_file(out / "doctype_posterior.json", to_json(posterior));
        std::cout << "Document-type error model (" << to_string(direction) << "), exact Dirichlet posterior\n";
    }
    write_manifest(out, manifest);
    if (!converged && o.strict) {
        std::cerr << "error: MCMC did not converge (R-hat >= " << format_2dp(kRhatThreshold) << ")\n";
        return exit_code::kNotConverged;
    }
    return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// propagate / inject
// ---------------------------------------------------------------------------

CLI::App* add_propagate(CLI::App& app, PropagateOptions& o, bool inject) {
    auto* cmd = inject
                    ? app.add_subcommand("inject", "Inject simulated errors into error-free data (first-kind models)")
                    : app.add_subcommand("propagate",
                                         "Simulate error-free indicator distributions (second-kind models)");
    cmd->add_option("--pubs", o.pubs, "Publications CSV of the assessed units (id,unit,doctype,year,field,citations)")
        ->required();
    cmd->add_option("--reference", o.reference, "Publications CSV of the reference set");
    cmd->add_option("--citation-model", o.citation_model, "Citation posterior JSON written by fit");
    cmd->add_option("--doctype-model", o.doctype_model, "Document-type posterior JSON written by fit");
    cmd->add_option("--channels", o.channels, "Error channels: citations, doctypes or citations,doctypes");
    cmd->add_option("--iterations", o.iterations, "Monte Carlo iterations")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Random seed");
    cmd->add_option("--key-mode", o.key_mode, "Normalization cells: doctype or doctype-year-field")
        ->check(kKeyModes);
    cmd->add_option("--universe", o.universe,
                    "Publications defining the cells: pooled (reference plus units) or reference")
        ->check(kUniverses);
    cmd->add_flag("--per-item-draws", o.per_item_draws,
                  "Draw model parameters per publication instead of once per iteration");
    cmd->add_option("--out", o.out, "Output directory for report.json, plot CSVs and the run manifest");
    cmd->add_flag("--dump-draws", o.dump_draws, "Also write every predicted value to draws.csv in --out");
    add_workers(cmd, o.workers);
    return cmd;
}

int run_propagate(const CLI::App& cmd, const PropagateOptions& o, bool inject) {
    const auto channels = parse_channels(o.channels);
    if (!channels) throw UsageError("invalid --channels '" + o.channels + "'");
    if (o.dump_draws && o.out.empty()) throw UsageError("--dump-draws needs --out");

    PropagationConfig cfg;
    cfg.iterations = o.iterations;
    cfg.seed = o.seed;
    cfg.channels = *channels;
    cfg.direction = inject ? ModelKind::FirstKind : ModelKind::SecondKind;
    cfg.key_mode = *parse_key_mode(o.key_mode);
    cfg.universe = *parse_universe(o.universe);
    cfg.share_parameter_draws = !o.per_item_draws;
    cfg.workers = resolve_workers(o.workers);

    if (cfg.channels.citations && o.citation_model.empty()) {
        throw UsageError("channel 'citations' is enabled but no --citation-model was given");
    }
    if (cfg.channels.doctypes && o.doctype_model.empty()) {
        throw UsageError("channel 'doctypes' is enabled but no --doctype-model was given");
    }
    if (cfg.universe == NormalizationUniverse::ReferenceOnly && o.reference.empty()) {
        throw UsageError("--universe reference needs --reference");
    }

    const json manifest = o.out.empty() ? json() : make_manifest(cmd);
    const auto units = load_publications(o.pubs);
    const PublicationSet reference =
        o.reference.empty() ? PublicationSet{"reference", SetRole::ReferenceSet, {}} : load_reference_set(o.reference);

    std::optional<NegBinPosterior> citation_model;
    std::optional<DirichletPosterior> doctype_model;
    ErrorModels models;
    if (cfg.channels.citations) models.citations = &citation_model.emplace(load_negbin_posterior(o.citation_model));
    if (cfg.channels.doctypes) models.doctypes = &doctype_model.emplace(load_dirichlet_posterior(o.doctype_model));

    const fs::path out = o.out;
    if (!o.out.empty()) fs::create_directories(out);

    PropagationResult result;
    if (o.dump_draws) {
        std::ofstream draws(out / "draws.csv", std::ios::binary);
        if (!draws) throw std::runtime_error("cannot write " + (out / "draws.csv").string());
        write_draws_header(draws);
        result = propagate(units, reference, models, cfg,
                           [&](std::span<const PredictiveDraw> d) { write_draws(draws, d); });
    } else {
        result = propagate(units, reference, models, cfg);
    }

    const auto rows = report_rows(result);
    render_table(std::cout, rows);

    if (!o.out.empty()) {
        write_json_file(out / "report.json", report_json(result));
        write_stream_file(out / "indicators.csv", [&](std::ostream& s) { write_indicator_csv(s, result); });
        write_stream_file(out / "uncertainty.csv", [&](std::ostream& s) { write_uncertainty_csv(s, result); });
        write_manifest(out, manifest);
    }
    return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// exercise
// ---------------------------------------------------------------------------

CLI::App* add_exercise(CLI::App& app, ExerciseOptionsCli& o) {
    auto* cmd = app.add_subcommand("exercise", "Run a simulation exercise: 1, 2, 3, 4, A1, A2, A3 or A4");
    cmd->add_option("name", o.name, "Exercise name: 1, 2, 3, 4, A1, A2, A3 or A4")->required();
    cmd->add_option("--draws", o.draws, "Posterior predictive draws (Monte Carlo iterations)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", o.seed, "Random seed for data generation, model fitting and simulation");
    cmd->add_option("--citation-sample", o.citation_sample,
                    "Citation error sample CSV; synthesized from the embedded missed-citation distribution when "
                    "absent");
    cmd->add_option("--doctype-confusion", o.doctype_confusion,
                    "Document-type confusion CSV; a synthetic table is used when absent");
    add_mcmc(cmd, o.mcmc);
    cmd->add_option("--pseudocount", o.pseudocount, "Dirichlet prior pseudocount per cell")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Output directory for exercise.json and the run manifest");
    add_workers(cmd, o.workers);
    return cmd;
}

int run_exercise(const CLI::App& cmd, const ExerciseOptionsCli& o) {
    const auto id = parse_exercise(o.name);
    if (!id) throw UsageError("unknown exercise '" + o.name + "'; valid names: 1, 2, 3, 4, A1, A2, A3, A4");

    const json manifest = o.out.empty() ? json() : make_manifest(cmd);
    const auto channels = exercise_channels(*id);

    ExerciseTraining training;
    if (channels.citations) {
        if (!o.citation_sample.empty()) {
            training.citation_sample = load_citation_error_sample(o.citation_sample);
        } else {
            const auto marginal = embedded_paper_sample();
            // observed total of the matching study: 6120 citations over 372 records
            auto synth = synthesize_training_sample(marginal, 6120.0 / 372.0, 0.31, o.seed);
            std::cerr << "note: no --citation-sample given; using a synthesized sample of "
                      << synth.sample.rows.size() << " rows";
            if (synth.achieved_r) std::cerr << " (r = " << format_2dp(*synth.achieved_r) << ")";
            std::cerr << '\n';
            if (synth.warning) std::cerr << "warning: " << *synth.warning << '\n';
            training.citation_sample = std::move(synth.sample);
        }
    }
    if (channels.doctypes) {
        if (!o.doctype_confusion.empty()) {
            training.confusion = load_doctype_confusion(o.doctype_confusion);
        } else {
            std::cerr << "note: no --doctype-confusion given; using the synthetic confusion table\n";
            training.confusion = synthetic_confusion_table();
        }
    }

    ExerciseOptions opts;
    opts.draws = o.draws;
    opts.seed = o.seed;
    opts.mcmc = mcmc_config(o.mcmc, o.seed);
    opts.pseudocount = o.pseudocount;
    opts.workers = resolve_workers(o.workers);

    const auto report = bibunc::run_exercise(*id, training, opts);
    render_exercise(std::cout, report);
    if (report.citation_diagnostics) {
        std::cout << "\nCitation model diagnostics\n";
        render_diagnostics(std::cout, *report.citation_diagnostics);
    }

    if (!o.out.empty()) {
        const fs::path out = o.out;
        fs::create_directories(out);
        write_json_file(out / "exercise.json", exercise_json(report));
        if (report.propagation) {
            write_stream_file(out / "indicators.csv",
                              [&](std::ostream& s) { write_indicator_csv(s, *report.propagation); });
            write_stream_file(out / "uncertainty.csv",
                              [&](std::ostream& s) { write_uncertainty_csv(s, *report.propagation); });
        }
        write_manifest(out, manifest);
    }
    return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

CLI::App* add_report(CLI::App& app, ReportOptions& o) {
    auto* cmd = app.add_subcommand("report", "Print the summary table of a report.json or exercise.json");
    cmd->add_option("--report", o.report, "Report JSON written by propagate, inject or exercise")->required();
    return cmd;
}

int run_report(const ReportOptions& o) {
    json j = read_json_file(o.report);
    if (j.is_object() && j.contains("exercise")) {
        std::cout << j.value("title", "") << "\n\n";
        for (const auto& t : j.value("frequency_tables", json::array())) {
            FrequencyTable table;
            table.title = t.at("title").get<std::string>();
            table.column_labels = t.at("columns").get<std::vector<std::string>>();
            for (const auto& r : t.at("rows")) {
                table.row_labels.push_back(r.at("label").get<std::string>());
                table.counts.push_back(r.at("counts").get<std::vector<std::size_t>>());
            }
            render_frequency_table(std::cout, table);
            std::cout << '\n';
        }
        if (!j.contains("report")) return exit_code::kOk;
        j = j["report"];
    }
    const auto rows = report_rows(j);
    render_table(std::cout, rows);
    return exit_code::kOk;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

CLI::App* add_stats(CLI::App& app, StatsOptions& o) {
    auto* cmd = app.add_subcommand("stats", "Summary statistics of a citation error sample");
    auto* sample = cmd->add_option("--citation-sample", o.citation_sample,
                                   "CSV with header observed_citations,omitted_citations");
    auto* embedded = cmd->add_flag("--embedded", o.embedded, "Use the embedded 372-record missed-citation distribution");
    sample->excludes(embedded);
    cmd->add_option("--total-observed", o.total_observed,
                    "With --embedded: total observed citations of the sample, enabling rate and mean statistics")
        ->check(CLI::NonNegativeNumber)
        ->needs(embedded);
    cmd->add_flag("--json", o.json, "Print statistics as JSON");
    cmd->add_option("--out", o.out, "Output directory for stats.json and the run manifest");
    return cmd;
}

int run_stats(const CLI::App& cmd, const StatsOptions& o) {
    if (o.citation_sample.empty() && !o.embedded) throw UsageError("stats needs --citation-sample or --embedded");
    const json manifest = o.out.empty() ? json() : make_manifest(cmd);

    json j;
    std::ostringstream text;
    if (o.embedded) {
        const auto m = embedded_paper_sample();
        const double records = static_cast<double>(m.records());
        j = {{"records", m.records()},
             {"total_omitted", m.total_missed()},
             {"records_with_omitted", m.records_with_missing()},
             {"share_with_omitted", static_cast<double>(m.records_with_missing()) / records}};
        char buf[256];
        text << "records:                 " << m.records() << '\n';
        text << "total omitted:           " << m.total_missed() << '\n';
        std::snprintf(buf, sizeof buf, "share with >= 1 omitted: %.2f%% (%lld records)\n",
                      100.0 * static_cast<double>(m.records_with_missing()) / records,
                      static_cast<long long>(m.records_with_missing()));
        text << buf;
        if (o.total_observed) {
            const double obs = static_cast<double>(*o.total_observed);
            const double missed = static_cast<double>(m.total_missed());
            j["total_observed"] = *o.total_observed;
            j["omitted_rate"] = obs > 0 ? json(missed / obs) : json(nullptr);
            j["mean_observed"] = obs / records;
            j["mean_corrected"] = (obs + missed) / records;
            if (obs > 0) {
                std::snprintf(buf, sizeof buf, "omitted rate:            %.2f%%\n", 100.0 * missed / obs);
                text << buf;
            }
            std::snprintf(buf, sizeof buf, "mean citations:          %.2f -> %.2f\n", obs / records,
                          (obs + missed) / records);
            text << buf;
        }
    } else {
        const auto s = sample_statistics(load_citation_error_sample(o.citation_sample));
        j = statistics_json(s);
        print_sample_statistics(text, s);
    }

    if (o.json) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << text.str();
    }
    if (!o.out.empty()) {
        fs::create_directories(o.out);
        write_json_file(fs::path(o.out) / "stats.json", j);
        write_manifest(o.out, manifest);
    }
    return exit_code::kOk;
}

}  // namespace bibunc::cli
