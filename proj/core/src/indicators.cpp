#include <bibunc/indicators.hpp>

#include <unordered_set>

namespace bibunc {

std::string_view to_string(KeyMode mode) noexcept {
    return mode == KeyMode::DocTypeOnly ? "doctype" : "doctype-year-field";
}

std::optional<KeyMode> parse_key_mode(std::string_view text) noexcept {
    if (text == "doctype" || text == "doctype-only") return KeyMode::DocTypeOnly;
    if (text == "doctype-year-field") return KeyMode::DocTypeYearField;
    return std::nullopt;
}

std::optional<CellKey> NormalizationTable::key_for(const Publication& p) const {
    if (mode_ == KeyMode::DocTypeOnly) return CellKey{p.doctype, std::nullopt, std::nullopt};
    if (!p.year || !p.field || p.field->empty()) return std::nullopt;
    return CellKey{p.doctype, p.year, p.field};
}

const NormalizationCell* NormalizationTable::find(const CellKey& key) const {
    auto it = cells_.find(key);
    return it == cells_.end() ? nullptr : &it->second;
}

const NormalizationCell* NormalizationTable::find(const Publication& p) const {
    auto key = key_for(p);
    return key ? find(*key) : nullptr;
}

void NormalizationTable::add(const Publication& p) {
    auto key = key_for(p);
    if (!key) return;
    auto [it, fresh] = cells_.try_emplace(*key);
    if (fresh) it->second.key = *key;
    it->second.total_citations += p.citations;
    ++it->second.size;
}

NormalizationTable build_normalization(std::span<const PublicationSet> sets, KeyMode mode) {
    NormalizationTable table(mode);
    std::unordered_set<std::string_view> seen;
    for (const auto& s : sets) {
        for (const auto& p : s.members) {
            if (seen.insert(p.id).second) table.add(p);
        }
    }
    return table;
}

PublicationSet select_core(const PublicationSet& set) {
    PublicationSet out{set.name, set.role, {}};
    for (const auto& p : set.members) {
        if (is_core_type(p.doctype)) out.members.push_back(p);
    }
    return out;
}

NcsResult ncs(const Publication& pub, const NormalizationTable& cells) {
    const auto* cell = cells.find(pub);
    if (!cell || cell->size == 0) return {0.0, NcsStatus::MissingCell};
    if (cell->total_citations == 0) {
        return pub.citations == 0 ? NcsResult{0.0, NcsStatus::Degenerate} : NcsResult{0.0, NcsStatus::Inconsistent};
    }
    return {static_cast<double>(pub.citations) / cell->expected_citations(), NcsStatus::Ok};
}

MncsResult mncs(const PublicationSet& set, const NormalizationTable& cells) {
    MncsResult r;
    double sum = 0.0;
    for (const auto& p : set.members) {
        const auto score = ncs(p, cells);
        if (!score.included()) {
            ++r.excluded;
            continue;
        }
        if (score.status == NcsStatus::Degenerate) ++r.degenerate;
        sum += score.value;
        ++r.included;
    }
    if (r.included > 0) r.value = sum / static_cast<double>(r.included);
    return r;
}

IndicatorResult indicators_for(const PublicationSet& unit, const NormalizationTable& cells) {
    const auto core = select_core(unit);
    IndicatorResult r;
    r.unit = unit.name;
    r.p = static_cast<std::int64_t>(core.members.size());
    for (const auto& p : core.members) r.c += p.citations;
    const auto m = mncs(core, cells);
    r.mncs = m.value;
    r.excluded = m.excluded;
    r.degenerate = m.degenerate;
    return r;
}

}  // namespace bibunc
