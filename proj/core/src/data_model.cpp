#include <bibunc/data_model.hpp>

#include "csv.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace bibunc {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr std::string_view kPublicationHeader[] = {"id", "unit", "doctype", "year", "field", "citations"};
constexpr std::string_view kCitationSampleHeader[] = {"observed_citations", "omitted_citations"};
constexpr std::string_view kConfusionHeader[] = {"true_type", "observed_type", "count"};

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open input file: " + path.string());
    return in;
}

bool iequals(std::string_view a, std::string_view b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

// Confusion-table labels must be one of the four names; the permissive
// mapping applies only to publication records.
DocType parse_strict_doctype(const std::string& label, std::size_t line, std::string_view column) {
    for (auto t : kAllDocTypes) {
        if (iequals(label, to_string(t))) return t;
    }
    throw ParseError(line, "column '" + std::string(column) + "': unknown document type '" + label + "'");
}

}  // namespace

DocType parse_doctype(std::string_view label) noexcept {
    if (iequals(label, "article")) return DocType::Article;
    if (iequals(label, "review")) return DocType::Review;
    if (iequals(label, "letter")) return DocType::Letter;
    return DocType::Other;
}

std::string_view to_string(DocType t) noexcept {
    switch (t) {
        case DocType::Article: return "article";
        case DocType::Review: return "review";
        case DocType::Letter: return "letter";
        case DocType::Other: return "other";
    }
    return "other";
}

void validate(const PublicationSet& set) {
    std::unordered_set<std::string_view> seen;
    seen.reserve(set.members.size());
    for (const auto& p : set.members) {
        if (p.citations < 0) {
            throw ValidationError("publication '" + p.id + "' in set '" + set.name + "' has negative citations");
        }
        if (!seen.insert(p.id).second) {
            throw ValidationError("duplicate publication id '" + p.id + "' in set '" + set.name + "'");
        }
    }
}

std::vector<PublicationSet> read_publications(std::istream& in, SetRole role) {
    detail::CsvReader reader(in, kPublicationHeader);
    std::vector<PublicationSet> sets;
    std::unordered_map<std::string, std::size_t> unit_index;
    std::unordered_map<std::string, std::size_t> id_line;

    detail::CsvRow row;
    while (reader.next(row)) {
        auto& f = row.fields;
        Publication p;
        p.id = f[0];
        if (p.id.empty()) throw ParseError(row.line, "column 'id': empty publication id");
        p.unit = f[1];
        p.doctype = parse_doctype(f[2]);
        if (!f[3].empty()) p.year = static_cast<int>(detail::parse_integer(f[3], row.line, "year"));
        if (!f[4].empty()) p.field = f[4];
        p.citations = detail::parse_count(f[5], row.line, "citations");

        if (auto [it, fresh] = id_line.emplace(p.id, row.line); !fresh) {
            throw ValidationError("line " + std::to_string(row.line) + ": duplicate publication id '" + p.id +
                                  "' (first seen on line " + std::to_string(it->second) + ")");
        }
        auto [it, fresh] = unit_index.emplace(p.unit, sets.size());
        if (fresh) sets.push_back(PublicationSet{p.unit, role, {}});
        sets[it->second].members.push_back(std::move(p));
    }
    return sets;
}

std::vector<PublicationSet> load_publications(const std::filesystem::path& path, SetRole role) {
    auto in = open_input(path);
    return read_publications(in, role);
}

PublicationSet load_reference_set(const std::filesystem::path& path, std::string name) {
    PublicationSet ref{std::move(name), SetRole::ReferenceSet, {}};
    for (auto& s : load_publications(path, SetRole::ReferenceSet)) {
        std::move(s.members.begin(), s.members.end(), std::back_inserter(ref.members));
    }
    return ref;
}

void write_publications(std::ostream& out, std::span<const PublicationSet> sets) {
    out << "id,unit,doctype,year,field,citations\n";
    for (const auto& s : sets) {
        for (const auto& p : s.members) {
            out << detail::csv_escape(p.id) << ',' << detail::csv_escape(p.unit) << ',' << to_string(p.doctype)
                << ',';
            if (p.year) out << *p.year;
            out << ',';
            if (p.field) out << detail::csv_escape(*p.field);
            out << ',' << p.citations << '\n';
        }
    }
}

// ---------------------------------------------------------------------------

CitationErrorSample read_citation_error_sample(std::istream& in) {
    detail::CsvReader reader(in, kCitationSampleHeader);
    CitationErrorSample sample;
    detail::CsvRow row;
    while (reader.next(row)) {
        sample.rows.push_back({detail::parse_count(row.fields[0], row.line, "observed_citations"),
                               detail::parse_count(row.fields[1], row.line, "omitted_citations")});
    }
    return sample;
}

CitationErrorSample load_citation_error_sample(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_citation_error_sample(in);
}

void write_citation_error_sample(std::ostream& out, const CitationErrorSample& sample) {
    out << "observed_citations,omitted_citations\n";
    for (const auto& r : sample.rows) out << r.observed << ',' << r.omitted << '\n';
}

void DocTypeConfusionTable::set(DocType true_type, DocType observed_type, std::int64_t n) {
    if (n < 0) throw ValidationError("confusion table counts must be non-negative");
    counts_[index_of(true_type)][index_of(observed_type)] = n;
}

void DocTypeConfusionTable::add(DocType true_type, DocType observed_type, std::int64_t n) {
    set(true_type, observed_type, count(true_type, observed_type) + n);
}

std::int64_t DocTypeConfusionTable::true_total(DocType true_type) const noexcept {
    std::int64_t total = 0;
    for (auto v : counts_[index_of(true_type)]) total += v;
    return total;
}

std::int64_t DocTypeConfusionTable::observed_total(DocType observed_type) const noexcept {
    std::int64_t total = 0;
    for (const auto& row : counts_) total += row[index_of(observed_type)];
    return total;
}

std::int64_t DocTypeConfusionTable::total() const noexcept {
    std::int64_t total = 0;
    for (auto t : kAllDocTypes) total += true_total(t);
    return total;
}

DocTypeConfusionTable read_doctype_confusion(std::istream& in) {
    detail::CsvReader reader(in, kConfusionHeader);
    DocTypeConfusionTable table;
    detail::CsvRow row;
    while (reader.next(row)) {
        const auto t = parse_strict_doctype(row.fields[0], row.line, "true_type");
        const auto o = parse_strict_doctype(row.fields[1], row.line, "observed_type");
        table.add(t, o, detail::parse_count(row.fields[2], row.line, "count"));
    }
    return table;
}

DocTypeConfusionTable load_doctype_confusion(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_doctype_confusion(in);
}

void write_doctype_confusion(std::ostream& out, const DocTypeConfusionTable& table) {
    out << "true_type,observed_type,count\n";
    for (auto t : kAllDocTypes) {
        for (auto o : kAllDocTypes) out << to_string(t) << ',' << to_string(o) << ',' << table.count(t, o) << '\n';
    }
}

// ---------------------------------------------------------------------------

std::int64_t MissedCitationMarginal::records() const noexcept {
    std::int64_t n = 0;
    for (const auto& [missed, freq] : histogram) n += freq;
    return n;
}

std::int64_t MissedCitationMarginal::total_missed() const noexcept {
    std::int64_t n = 0;
    for (const auto& [missed, freq] : histogram) n += missed * freq;
    return n;
}

std::int64_t MissedCitationMarginal::records_with_missing() const noexcept {
    std::int64_t n = 0;
    for (const auto& [missed, freq] : histogram) {
        if (missed > 0) n += freq;
    }
    return n;
}

MissedCitationMarginal embedded_paper_sample() {
    return MissedCitationMarginal{{
        {0, 263}, {1, 67}, {2, 20}, {3, 5}, {4, 5}, {5, 2}, {6, 3}, {8, 1}, {9, 4}, {15, 1}, {26, 1},
    }};
}

}  // namespace bibunc
