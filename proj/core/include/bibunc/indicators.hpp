#pragma once

#include <bibunc/data_model.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace bibunc {

/// How publications are grouped into normalization cells.
enum class KeyMode {
    DocTypeOnly,       // year and field are wildcards
    DocTypeYearField,  // items without a year or field have no cell
};

std::string_view to_string(KeyMode mode) noexcept;
std::optional<KeyMode> parse_key_mode(std::string_view text) noexcept;

struct CellKey {
    DocType doctype = DocType::Other;
    std::optional<int> year;            // nullopt = wildcard
    std::optional<std::string> field;   // nullopt = wildcard

    friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct NormalizationCell {
    CellKey key;
    std::int64_t total_citations = 0;
    std::size_t size = 0;

    /// Arithmetic mean of member citations.
    double expected_citations() const noexcept {
        return static_cast<double>(total_citations) / static_cast<double>(size);
    }
};

class NormalizationTable {
public:
    explicit NormalizationTable(KeyMode mode = KeyMode::DocTypeOnly) : mode_(mode) {}

    KeyMode mode() const noexcept { return mode_; }

    /// nullopt when the item cannot be keyed (missing year/field in
    /// DocTypeYearField mode).
    std::optional<CellKey> key_for(const Publication& p) const;

    const NormalizationCell* find(const Publication& p) const;
    const NormalizationCell* find(const CellKey& key) const;

    void add(const Publication& p);

    const std::map<CellKey, NormalizationCell>& cells() const noexcept { return cells_; }

private:
    KeyMode mode_;
    std::map<CellKey, NormalizationCell> cells_;
};

/// One cell per occupied key over the union of `sets`; a publication id
/// appearing in several sets is counted once.
NormalizationTable build_normalization(std::span<const PublicationSet> sets, KeyMode mode);

/// Article and Review members, order preserved.
PublicationSet select_core(const PublicationSet& set);

enum class NcsStatus {
    Ok,
    Degenerate,    // cell mean 0 and item has 0 citations: NCS defined as 0
    MissingCell,   // no cell for this item: excluded
    Inconsistent,  // cell mean 0 but item has citations: excluded
};

struct NcsResult {
    double value = 0.0;
    NcsStatus status = NcsStatus::Ok;

    bool included() const noexcept { return status == NcsStatus::Ok || status == NcsStatus::Degenerate; }
};

NcsResult ncs(const Publication& pub, const NormalizationTable& cells);

struct MncsResult {
    /// Absent when no member could be normalized.
    std::optional<double> value;
    std::size_t included = 0;
    std::size_t excluded = 0;
    std::size_t degenerate = 0;
};

/// Mean NCS over all members of `set` that have a usable cell.
MncsResult mncs(const PublicationSet& set, const NormalizationTable& cells);

struct IndicatorResult {
    std::string unit;
    std::int64_t p = 0;
    std::int64_t c = 0;
    std::optional<double> mncs;
    std::size_t excluded = 0;    // selected items without a usable cell
    std::size_t degenerate = 0;  // selected items normalized against a zero-mean cell
};

/// P, C and MNCS over the Article/Review subset of `unit`.
IndicatorResult indicators_for(const PublicationSet& unit, const NormalizationTable& cells);

}  // namespace bibunc
