#include "bibunc/commands.hpp"
#include "bibunc/json_config.hpp"

#include <bibunc/data_model.hpp>

#include <nlohmann/json.hpp>

#include <iostream>
#include <memory>

namespace cli = bibunc::cli;

int main(int argc, char** argv) {
    CLI::App app{"Uncertainty of bibliometric indicators under citation and document-type errors", "bibunc"};
    app.set_version_flag("--version", BIBUNC_VERSION);
    app.option_defaults()->always_capture_default();
    app.config_formatter(std::make_shared<cli::JsonConfig>());
    app.set_config("--config", "", "JSON config file or run manifest; command-line flags take precedence");
    app.require_subcommand(1);

    cli::FitOptions fit;
    cli::PropagateOptions propagate;
    cli::PropagateOptions inject;
    cli::ExerciseOptionsCli exercise;
    cli::ReportOptions report;
    cli::StatsOptions stats;

    auto* fit_cmd = cli::add_fit(app, fit);
    auto* propagate_cmd = cli::add_propagate(app, propagate, false);
    auto* inject_cmd = cli::add_propagate(app, inject, true);
    auto* exercise_cmd = cli::add_exercise(app, exercise);
    auto* report_cmd = cli::add_report(app, report);
    auto* stats_cmd = cli::add_stats(app, stats);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_code::kUsage;
    }

    try {
        if (fit_cmd->parsed()) return cli::run_fit(*fit_cmd, fit);
        if (propagate_cmd->parsed()) return cli::run_propagate(*propagate_cmd, propagate, false);
        if (inject_cmd->parsed()) return cli::run_propagate(*inject_cmd, inject, true);
        if (exercise_cmd->parsed()) return cli::run_exercise(*exercise_cmd, exercise);
        if (report_cmd->parsed()) return cli::run_report(report);
        if (stats_cmd->parsed()) return cli::run_stats(*stats_cmd, stats);
    } catch (const bibunc::UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::kUsage;
    } catch (const bibunc::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::kUsage;
    } catch (const bibunc::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::kUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << '\n';
        return cli::exit_code::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::kRuntime;
    }
    return cli::exit_code::kUsage;
}
