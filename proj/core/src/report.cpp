#include <bibunc/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace bibunc {

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ValidationError(std::string("report field '") + key + "' is not a number");
    return it->get<double>();
}

std::string csv_number(const std::optional<double>& v) {
    if (!v) return {};
    std::ostringstream os;
    os.precision(17);
    os << *v;
    return os.str();
}

std::string cell_observed(const ReportCell& c, bool integral) {
    if (!c.observed) return "-";
    return integral ? std::to_string(static_cast<long long>(std::llround(*c.observed))) : format_2dp(*c.observed);
}

std::string cell_simulated(const ReportCell& c) {
    if (!c.summary) return "-";
    return format_2dp(c.summary->median) + " (" + format_2dp(c.summary->ci_low) + ", " +
           format_2dp(c.summary->ci_high) + ")";
}

void write_grid(std::ostream& out, const std::vector<std::vector<std::string>>& grid) {
    if (grid.empty()) return;
    std::vector<std::size_t> width(grid.front().size(), 0);
    for (const auto& row : grid) {
        for (std::size_t k = 0; k < row.size(); ++k) width[k] = std::max(width[k], row[k].size());
    }
    for (std::size_t r = 0; r < grid.size(); ++r) {
        const auto& row = grid[r];
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0) out << "  ";
            if (k == 0) {
                out << row[k] << std::string(width[k] - row[k].size(), ' ');
            } else {
                out << std::string(width[k] - row[k].size(), ' ') << row[k];
            }
        }
        out << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (auto w : width) total += w;
            out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
        }
    }
}

}  // namespace

std::string format_2dp(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    // avoid printing "-0.00"
    if (std::string_view(buf) == "-0.00") return "0.00";
    return buf;
}

std::vector<ReportRow> report_rows(const PropagationResult& result) {
    std::vector<ReportRow> rows;
    for (std::size_t u = 0; u < result.observed.size(); ++u) {
        ReportRow row;
        row.unit = result.observed[u].unit;
        row.excluded = result.observed[u].excluded;
        row.degenerate = result.observed[u].degenerate;
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& d = result.distribution(u, static_cast<Indicator>(k));
            row.cells[k] = {d.observed, d.summary, d.undefined};
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ReportRow> report_rows(const json& report) {
    if (!report.is_object() || report.value("format", "") != kReportFormat) {
        throw ValidationError(std::string("not a report document (expected format '") + kReportFormat + "')");
    }
    if (report.value("version", 0) != kReportSchemaVersion) throw ValidationError("unsupported report version");
    const auto units = report.find("units");
    if (units == report.end() || !units->is_array()) throw ValidationError("report has no 'units' array");

    std::vector<ReportRow> rows;
    for (const auto& u : *units) {
        ReportRow row;
        row.unit = u.at("unit").get<std::string>();
        row.excluded = u.value("excluded", std::size_t{0});
        row.degenerate = u.value("degenerate", std::size_t{0});
        const auto& ind = u.at("indicators");
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& j = ind.at(std::string(to_string(static_cast<Indicator>(k))));
            ReportCell cell;
            cell.observed = number_or_null(j, "observed");
            cell.undefined = j.value("undefined", std::size_t{0});
            const auto median = number_or_null(j, "median");
            if (median) {
                DistributionSummary s;
                s.median = *median;
                s.ci_low = number_or_null(j, "ci_low").value_or(*median);
                s.ci_high = number_or_null(j, "ci_high").value_or(*median);
                s.relative_uncertainty_pct = number_or_null(j, "relative_uncertainty_pct");
                cell.summary = s;
            }
            row.cells[k] = cell;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json report_json(const PropagationResult& result) {
    const auto& cfg = result.config;
    json units = json::array();
    for (std::size_t u = 0; u < result.observed.size(); ++u) {
        const auto& obs = result.observed[u];
        json indicators = json::object();
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& d = result.distribution(u, static_cast<Indicator>(k));
            json entry;
            entry["observed"] = optional_number(d.observed);
            entry["median"] = d.summary ? json(d.summary->median) : json(nullptr);
            entry["ci_low"] = d.summary ? json(d.summary->ci_low) : json(nullptr);
            entry["ci_high"] = d.summary ? json(d.summary->ci_high) : json(nullptr);
            entry["relative_uncertainty_pct"] =
                d.summary ? optional_number(d.summary->relative_uncertainty_pct) : json(nullptr);
            entry["iterations"] = d.replicates.size();
            entry["seed"] = cfg.seed;
            entry["undefined"] = d.undefined;
            indicators[std::string(to_string(d.indicator))] = std::move(entry);
        }
        units.push_back({{"unit", obs.unit},
                         {"excluded", obs.excluded},
                         {"degenerate", obs.degenerate},
                         {"indicators", std::move(indicators)}});
    }
    return {{"format", kReportFormat},
            {"version", kReportSchemaVersion},
            {"iterations", cfg.iterations},
            {"seed", cfg.seed},
            {"channels", to_string(cfg.channels)},
            {"direction", to_string(cfg.direction)},
            {"key_mode", to_string(cfg.key_mode)},
            {"universe", to_string(cfg.universe)},
            {"units", std::move(units)}};
}

json to_json(const FrequencyTable& table) {
    json rows = json::array();
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        rows.push_back({{"label", table.row_labels[r]}, {"counts", table.counts[r]}});
    }
    return {{"title", table.title}, {"columns", table.column_labels}, {"rows", std::move(rows)}};
}

json exercise_json(const ExerciseReport& report) {
    json j{{"exercise", to_string(report.id)}, {"title", report.title}, {"direction", to_string(report.direction)}};
    if (!report.frequency_tables.empty()) {
        json tables = json::array();
        for (const auto& t : report.frequency_tables) tables.push_back(to_json(t));
        j["frequency_tables"] = std::move(tables);
    }
    if (report.propagation) j["report"] = report_json(*report.propagation);
    return j;
}

void write_indicator_csv(std::ostream& out, const PropagationResult& result) {
    out << "unit,indicator,observed,median,ci_low,ci_high\n";
    for (const auto& d : result.distributions) {
        out << d.unit << ',' << to_string(d.indicator) << ',' << csv_number(d.observed) << ',';
        if (d.summary) {
            out << csv_number(d.summary->median) << ',' << csv_number(d.summary->ci_low) << ','
                << csv_number(d.summary->ci_high);
        } else {
            out << ",,";
        }
        out << '\n';
    }
}

void write_uncertainty_csv(std::ostream& out, const PropagationResult& result) {
    out << "unit,P_median,mncs_rel_uncertainty_pct\n";
    for (std::size_t u = 0; u < result.observed.size(); ++u) {
        const auto& p = result.distribution(u, Indicator::P);
        const auto& m = result.distribution(u, Indicator::MNCS);
        out << result.observed[u].unit << ','
            << csv_number(p.summary ? std::optional<double>(p.summary->median) : std::nullopt) << ','
            << csv_number(m.summary ? m.summary->relative_uncertainty_pct : std::nullopt) << '\n';
    }
}

void render_table(std::ostream& out, std::span<const ReportRow> rows) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Unit", "P observed", "P simulated", "C observed", "C simulated", "MNCS observed",
                    "MNCS simulated", "MNCS rel. unc. %"});
    for (const auto& row : rows) {
        const auto& mncs = row.cells[2];
        std::string rel = "-";
        if (mncs.summary && mncs.summary->relative_uncertainty_pct) {
            rel = format_2dp(*mncs.summary->relative_uncertainty_pct);
        }
        grid.push_back({row.unit, cell_observed(row.cells[0], true), cell_simulated(row.cells[0]),
                        cell_observed(row.cells[1], true), cell_simulated(row.cells[1]),
                        cell_observed(mncs, false), cell_simulated(mncs), rel});
    }
    write_grid(out, grid);
    for (const auto& row : rows) {
        if (row.excluded > 0 || row.degenerate > 0 || row.cells[2].undefined > 0) {
            out << "note: " << row.unit << ": " << row.excluded << " excluded, " << row.degenerate
                << " degenerate, " << row.cells[2].undefined << " iterations with undefined MNCS\n";
        }
    }
}

void render_frequency_table(std::ostream& out, const FrequencyTable& table) {
    out << table.title << '\n';
    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{""};
    header.insert(header.end(), table.column_labels.begin(), table.column_labels.end());
    grid.push_back(std::move(header));
    for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
        std::vector<std::string> line{table.row_labels[r]};
        for (auto c : table.counts[r]) line.push_back(std::to_string(c));
        grid.push_back(std::move(line));
    }
    write_grid(out, grid);
}

void render_diagnostics(std::ostream& out, const McmcDiagnostics& d) {
    std::vector<std::vector<std::string>> grid;
    grid.push_back({"Parameter", "R-hat", "ESS"});
    auto add = [&](const char* name, const ParameterDiagnostics& p) {
        char ess[32];
        std::snprintf(ess, sizeof ess, "%.0f", p.ess);
        grid.push_back({name, p.rhat ? format_2dp(*p.rhat) : "-", ess});
    };
    add("intercept", d.intercept);
    add("slope", d.slope);
    add("dispersion", d.dispersion);
    write_grid(out, grid);
    out << "acceptance:";
    for (double a : d.acceptance_rate) out << ' ' << format_2dp(a);
    out << '\n';
    if (!d.converged) out << "warning: R-hat >= " << format_2dp(kRhatThreshold) << " for at least one parameter\n";
}

void render_exercise(std::ostream& out, const ExerciseReport& report) {
    out << report.title << "\n\n";
    for (const auto& t : report.frequency_tables) {
        render_frequency_table(out, t);
        out << '\n';
    }
    if (report.propagation) {
        const auto rows = report_rows(*report.propagation);
        render_table(out, rows);
    }
}

}  // namespace bibunc
