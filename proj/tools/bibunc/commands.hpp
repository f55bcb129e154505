#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace bibunc::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kRuntime = 1;
inline constexpr int kUsage = 2;
inline constexpr int kNotConverged = 3;
}  // namespace exit_code

struct McmcFlags {
    int chains = 4;
    int warmup = 1000;
    int keep = 1000;
};

struct FitOptions {
    std::string citation_sample;
    std::string doctype_confusion;
    std::string direction = "second-kind";
    std::uint64_t seed = 1;
    McmcFlags mcmc;
    double pseudocount = 1.0;
    double intercept_sd = 0.8;
    double slope_sd = 1.0;
    double log_dispersion_sd = 1.0;
    std::string out;
    bool strict = false;
    unsigned workers = 0;
};

struct PropagateOptions {
    std::string pubs;
    std::string reference;
    std::string citation_model;
    std::string doctype_model;
    std::string channels = "citations";
    std::size_t iterations = 2000;
    std::uint64_t seed = 1;
    std::string key_mode = "doctype";
    std::string universe = "pooled";
    bool per_item_draws = false;
    std::string out;
    bool dump_draws = false;
    unsigned workers = 0;
};

struct ExerciseOptionsCli {
    std::string name;
    std::size_t draws = 2000;
    std::uint64_t seed = 1;
    std::string citation_sample;
    std::string doctype_confusion;
    McmcFlags mcmc;
    double pseudocount = 1.0;
    std::string out;
    unsigned workers = 0;
};

struct ReportOptions {
    std::string report;
};

struct StatsOptions {
    std::string citation_sample;
    bool embedded = false;
    std::optional<std::int64_t> total_observed;
    bool json = false;
    std::string out;
};

CLI::App* add_fit(CLI::App& app, FitOptions& o);
CLI::App* add_propagate(CLI::App& app, PropagateOptions& o, bool inject);
CLI::App* add_exercise(CLI::App& app, ExerciseOptionsCli& o);
CLI::App* add_report(CLI::App& app, ReportOptions& o);
CLI::App* add_stats(CLI::App& app, StatsOptions& o);

int run_fit(const CLI::App& cmd, const FitOptions& o);
int run_propagate(const CLI::App& cmd, const PropagateOptions& o, bool inject);
int run_exercise(const CLI::App& cmd, const ExerciseOptionsCli& o);
int run_report(const ReportOptions& o);
int run_stats(const CLI::App& cmd, const StatsOptions& o);

}  // namespace bibunc::cli
