#pragma once

#include <bibunc/simulation.hpp>

#include <nlohmann/json.hpp>

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bibunc {

inline constexpr const char* kReportFormat = "bibunc.report";
inline constexpr int kReportSchemaVersion = 1;

/// One printed table cell: observed value and simulated summary.
struct ReportCell {
    std::optional<double> observed;
    std::optional<DistributionSummary> summary;
    std::size_t undefined = 0;
};

struct ReportRow {
    std::string unit;
    std::array<ReportCell, 3> cells;  // P, C, MNCS
    std::size_t excluded = 0;
    std::size_t degenerate = 0;
};

std::vector<ReportRow> report_rows(const PropagationResult& result);
/// Reads the rows back from a report document; throws ValidationError on a
/// malformed document.
std::vector<ReportRow> report_rows(const nlohmann::json& report);

/// Per unit per indicator: observed, median, ci_low, ci_high,
/// relative_uncertainty_pct, iterations, seed. Undefined values are null.
nlohmann::json report_json(const PropagationResult& result);

nlohmann::json to_json(const FrequencyTable& table);
nlohmann::json exercise_json(const ExerciseReport& report);

/// `unit,indicator,observed,median,ci_low,ci_high`
void write_indicator_csv(std::ostream& out, const PropagationResult& result);
/// `unit,P_median,mncs_rel_uncertainty_pct`
void write_uncertainty_csv(std::ostream& out, const PropagationResult& result);

/// Observed vs simulated per unit; simulated cells read "median (lo, hi)",
/// rounded to two decimals.
void render_table(std::ostream& out, std::span<const ReportRow> rows);
void render_frequency_table(std::ostream& out, const FrequencyTable& table);
void render_diagnostics(std::ostream& out, const McmcDiagnostics& diagnostics);
void render_exercise(std::ostream& out, const ExerciseReport& report);

/// Fixed two-decimal formatting used by every rendered table.
std::string format_2dp(double value);

}  // namespace bibunc
