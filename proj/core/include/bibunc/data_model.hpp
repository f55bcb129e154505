#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bibunc {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

/// Malformed input text. Carries the 1-based line number of the offending row
/// (the header is line 1).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parses but violates a data invariant (duplicate id, negative count).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse: missing model for an enabled channel, empty posterior, etc.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Document types
// ---------------------------------------------------------------------------

enum class DocType : std::uint8_t { Article = 0, Review = 1, Letter = 2, Other = 3 };

inline constexpr std::size_t kDocTypeCount = 4;
inline constexpr std::array<DocType, kDocTypeCount> kAllDocTypes{
    DocType::Article, DocType::Review, DocType::Letter, DocType::Other};

constexpr std::size_t index_of(DocType t) noexcept { return static_cast<std::size_t>(t); }

/// Case-insensitive; any label other than article/review/letter maps to Other.
DocType parse_doctype(std::string_view label) noexcept;
std::string_view to_string(DocType t) noexcept;

/// Article and Review are the types counted by P, C and MNCS.
constexpr bool is_core_type(DocType t) noexcept {
    return t == DocType::Article || t == DocType::Review;
}

// ---------------------------------------------------------------------------
// Publications
// ---------------------------------------------------------------------------

struct Publication {
    std::string id;
    std::string unit;
    DocType doctype = DocType::Other;
    std::optional<int> year;
    std::optional<std::string> field;
    std::int64_t citations = 0;

    friend bool operator==(const Publication&, const Publication&) = default;
};

enum class SetRole { AssessedUnit, ReferenceSet };

struct PublicationSet {
    std::string name;
    SetRole role = SetRole::AssessedUnit;
    std::vector<Publication> members;
};

/// Throws ValidationError on negative citations or duplicate ids.
void validate(const PublicationSet& set);

/// Parses `id,unit,doctype,year,field,citations` and groups rows by unit in
/// order of first appearance. Ids must be unique across the whole file.
std::vector<PublicationSet> read_publications(std::istream& in, SetRole role = SetRole::AssessedUnit);
std::vector<PublicationSet> load_publications(const std::filesystem::path& path,
                                              SetRole role = SetRole::AssessedUnit);

/// Collapses every row of a file into one set named `name`.
PublicationSet load_reference_set(const std::filesystem::path& path, std::string name = "reference");

void write_publications(std::ostream& out, std::span<const PublicationSet> sets);

// ---------------------------------------------------------------------------
// Error samples
// ---------------------------------------------------------------------------

struct CitationErrorRow {
    std::int64_t observed = 0;
    std::int64_t omitted = 0;

    friend bool operator==(const CitationErrorRow&, const CitationErrorRow&) = default;
};

struct CitationErrorSample {
    std::vector<CitationErrorRow> rows;
};

CitationErrorSample read_citation_error_sample(std::istream& in);
CitationErrorSample load_citation_error_sample(const std::filesystem::path& path);
void write_citation_error_sample(std::ostream& out, const CitationErrorSample& sample);

/// Counts of (true type, observed type) pairs.
class DocTypeConfusionTable {
public:
    DocTypeConfusionTable() = default;

    std::int64_t count(DocType true_type, DocType observed_type) const noexcept {
        return counts_[index_of(true_type)][index_of(observed_type)];
    }
    void set(DocType true_type, DocType observed_type, std::int64_t n);
    void add(DocType true_type, DocType observed_type, std::int64_t n);

    std::int64_t true_total(DocType true_type) const noexcept;
    std::int64_t observed_total(DocType observed_type) const noexcept;
    std::int64_t total() const noexcept;

private:
    std::array<std::array<std::int64_t, kDocTypeCount>, kDocTypeCount> counts_{};
};

DocTypeConfusionTable read_doctype_confusion(std::istream& in);
DocTypeConfusionTable load_doctype_confusion(const std::filesystem::path& path);
void write_doctype_confusion(std::ostream& out, const DocTypeConfusionTable& table);

/// Histogram: number of missed citations -> number of records.
struct MissedCitationMarginal {
    std::map<std::int64_t, std::int64_t> histogram;

    std::int64_t records() const noexcept;
    std::int64_t total_missed() const noexcept;
    std::int64_t records_with_missing() const noexcept;
};

/// The 372-record missed-citation distribution from the WoS matching study.
MissedCitationMarginal embedded_paper_sample();

// ---------------------------------------------------------------------------
// Sample statistics
// ---------------------------------------------------------------------------

struct Correlation {
    double r = 0.0;
    /// Fisher-z 95% interval; absent when n <= 3.
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

struct SampleStatistics {
    std::size_t rows = 0;
    std::int64_t total_observed = 0;
    std::int64_t total_omitted = 0;
    /// total_omitted / total_observed; absent when nothing was observed.
    std::optional<double> omitted_rate;
    double share_with_omitted = 0.0;
    double mean_observed = 0.0;
    double mean_corrected = 0.0;
    /// Raw Pearson correlation of (observed, omitted); absent on zero variance.
    std::optional<Correlation> correlation;
};

SampleStatistics sample_statistics(const CitationErrorSample& sample);

/// Pearson r over paired values; nullopt if either column has zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

}  // namespace bibunc
