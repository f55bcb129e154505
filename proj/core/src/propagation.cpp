#include <bibunc/parallel.hpp>
#include <bibunc/random.hpp>
#include <bibunc/sampling.hpp>
#include <bibunc/simulation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace bibunc {

std::string_view to_string(Indicator indicator) noexcept {
    switch (indicator) {
        case Indicator::P: return "P";
        case Indicator::C: return "C";
        case Indicator::MNCS: return "MNCS";
    }
    return "?";
}

std::string_view to_string(NormalizationUniverse u) noexcept {
    return u == NormalizationUniverse::Pooled ? "pooled" : "reference";
}

std::optional<NormalizationUniverse> parse_universe(std::string_view text) noexcept {
    if (text == "pooled") return NormalizationUniverse::Pooled;
    if (text == "reference" || text == "reference-only") return NormalizationUniverse::ReferenceOnly;
    return std::nullopt;
}

std::optional<Channels> parse_channels(std::string_view text) noexcept {
    Channels ch{false, false};
    while (!text.empty()) {
        const auto comma = text.find(',');
        const auto token = text.substr(0, comma);
        if (token == "citations") {
            ch.citations = true;
        } else if (token == "doctypes") {
            ch.doctypes = true;
        } else {
            return std::nullopt;
        }
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (!ch.citations && !ch.doctypes) return std::nullopt;
    return ch;
}

std::string to_string(Channels channels) {
    if (channels.citations && channels.doctypes) return "citations,doctypes";
    return channels.citations ? "citations" : "doctypes";
}

void PropagationConfig::validate() const {
    if (iterations < 1) throw UsageError("propagation needs at least one iteration");
    if (!channels.citations && !channels.doctypes) throw UsageError("at least one error channel must be enabled");
}

namespace {

struct Item {
    const Publication* pub = nullptr;
    std::uint64_t key = 0;
    std::int32_t group = 0;  // -1: cannot be normalized
    bool in_normalization = true;
};

struct Universe {
    std::vector<Item> items;
    std::vector<std::vector<std::uint32_t>> unit_members;
    std::size_t groups = 1;
};

Universe build_universe(std::span<const PublicationSet> units, const PublicationSet& reference,
                        const PropagationConfig& cfg) {
    Universe u;
    std::unordered_map<std::string_view, std::uint32_t> index;
    std::map<std::pair<int, std::string_view>, std::int32_t> group_ids;

    auto group_of = [&](const Publication& p) -> std::int32_t {
        if (cfg.key_mode == KeyMode::DocTypeOnly) return 0;
        if (!p.year || !p.field || p.field->empty()) return -1;
        auto [it, fresh] = group_ids.try_emplace({*p.year, *p.field}, static_cast<std::int32_t>(group_ids.size()));
        return it->second;
    };
    auto intern = [&](const Publication& p, bool normalizing) {
        auto [it, fresh] = index.try_emplace(p.id, static_cast<std::uint32_t>(u.items.size()));
        if (fresh) {
            u.items.push_back({&p, hash_label(p.id), group_of(p), normalizing});
        } else {
            u.items[it->second].in_normalization = u.items[it->second].in_normalization || normalizing;
        }
        return it->second;
    };

    const bool pooled = cfg.universe == NormalizationUniverse::Pooled;
    for (const auto& unit : units) {
        auto& members = u.unit_members.emplace_back();
        members.reserve(unit.members.size());
        for (const auto& p : unit.members) members.push_back(intern(p, pooled));
    }
    for (const auto& p : reference.members) intern(p, true);
    u.groups = std::max<std::size_t>(1, group_ids.size());
    return u;
}

struct Scratch {
    std::vector<DocType> doctype;
    std::vector<std::int64_t> citations;
    std::vector<std::int64_t> cell_total;
    std::vector<std::int64_t> cell_size;
};

struct UnitValues {
    double p = 0.0;
    double c = 0.0;
    double mncs = std::numeric_limits<double>::quiet_NaN();
};

// Same arithmetic as build_normalization + indicators_for, on flat arrays.
void evaluate(const Universe& u, Scratch& s, std::span<UnitValues> out) {
    std::fill(s.cell_total.begin(), s.cell_total.end(), 0);
    std::fill(s.cell_size.begin(), s.cell_size.end(), 0);
    for (std::size_t i = 0; i < u.items.size(); ++i) {
        const auto& item = u.items[i];
        if (!item.in_normalization || item.group < 0) continue;
        const auto cell = static_cast<std::size_t>(item.group) * kDocTypeCount + index_of(s.doctype[i]);
        s.cell_total[cell] += s.citations[i];
        ++s.cell_size[cell];
    }
    for (std::size_t k = 0; k < u.unit_members.size(); ++k) {
        std::int64_t p = 0, c = 0;
        std::size_t included = 0;
        double sum = 0.0;
        for (auto i : u.unit_members[k]) {
            if (!is_core_type(s.doctype[i])) continue;
            ++p;
            c += s.citations[i];
            const auto group = u.items[i].group;
            if (group < 0) continue;
            const auto cell = static_cast<std::size_t>(group) * kDocTypeCount + index_of(s.doctype[i]);
            if (s.cell_size[cell] == 0) continue;
            if (s.cell_total[cell] == 0) {
                if (s.citations[i] == 0) ++included;  // degenerate: NCS 0
                continue;
            }
            const double expected =
                static_cast<double>(s.cell_total[cell]) / static_cast<double>(s.cell_size[cell]);
            sum += static_cast<double>(s.citations[i]) / expected;
            ++included;
        }
        out[k].p = static_cast<double>(p);
        out[k].c = static_cast<double>(c);
        out[k].mncs = included > 0 ? sum / static_cast<double>(included) : std::numeric_limits<double>::quiet_NaN();
    }
}

class Engine {
public:
    Engine(const Universe& u, const ErrorModels& models, const PropagationConfig& cfg)
        : u_(u), models_(models), cfg_(cfg) {
        log1p_citations_.reserve(u.items.size());
        for (const auto& item : u.items) log1p_citations_.push_back(std::log1p(static_cast<double>(item.pub->citations)));
    }

    Scratch make_scratch() const {
        Scratch s;
        s.doctype.resize(u_.items.size());
        s.citations.resize(u_.items.size());
        s.cell_total.resize(u_.groups * kDocTypeCount);
        s.cell_size.resize(u_.groups * kDocTypeCount);
        return s;
    }

    void perturb(std::size_t iteration, Scratch& s) const {
        const bool shared = cfg_.share_parameter_draws;
        Stream iter_rng = substream(cfg_.seed, {stream_tag::kIteration, iteration});

        std::array<DocTypeProbabilities, kDocTypeCount> probs{};
        if (cfg_.channels.doctypes && shared) {
            for (auto t : kAllDocTypes) probs[index_of(t)] = sample_dirichlet(models_.doctypes->row(t), iter_rng);
        }
        const NegBinDraw* shared_theta = nullptr;
        if (cfg_.channels.citations) {
            const auto& draws = models_.citations->draws;
            shared_theta = &draws[iteration % draws.size()];
        }

        for (std::size_t i = 0; i < u_.items.size(); ++i) {
            const auto& item = u_.items[i];
            DocType dt = item.pub->doctype;
            std::int64_t c = item.pub->citations;
            Stream rng = substream(cfg_.seed, {stream_tag::kItem, iteration, item.key});
            if (cfg_.channels.doctypes) {
                const auto& row = models_.doctypes->row(dt);
                dt = sample_category(shared ? probs[index_of(dt)] : sample_dirichlet(row, rng), rng);
            }
            if (cfg_.channels.citations) {
                const auto& draws = models_.citations->draws;
                const NegBinDraw& theta =
                    shared ? *shared_theta
                           : draws[static_cast<std::size_t>(rng.uniform() * static_cast<double>(draws.size())) %
                                   draws.size()];
                const double mean = std::exp(theta.intercept + theta.slope * log1p_citations_[i]);
                const auto omitted = sample_negbin(mean, theta.dispersion, rng);
                c = cfg_.direction == ModelKind::SecondKind ? c + omitted : std::max<std::int64_t>(0, c - omitted);
            }
            s.doctype[i] = dt;
            s.citations[i] = c;
        }
    }

private:
    const Universe& u_;
    const ErrorModels& models_;
    const PropagationConfig& cfg_;
    std::vector<double> log1p_citations_;
};

void check_models(const ErrorModels& models, const PropagationConfig& cfg) {
    if (cfg.channels.citations) {
        if (!models.citations) throw UsageError("citations channel enabled but no citation model supplied");
        if (models.citations->draws.empty()) throw UsageError("citation posterior has no draws");
        if (models.citations->spec.direction != cfg.direction) {
            throw UsageError("citation model is " + std::string(to_string(models.citations->spec.direction)) +
                             " but the run is " + std::string(to_string(cfg.direction)));
        }
    }
    if (cfg.channels.doctypes) {
        if (!models.doctypes) throw UsageError("doctypes channel enabled but no document-type model supplied");
        if (models.doctypes->direction != cfg.direction) {
            throw UsageError("document-type model is " + std::string(to_string(models.doctypes->direction)) +
                             " but the run is " + std::string(to_string(cfg.direction)));
        }
        for (auto t : kAllDocTypes) {
            double total = 0.0;
            for (double a : models.doctypes->row(t)) total += a;
            if (!(total > 0.0)) {
                throw UsageError("document-type model has no data for type '" + std::string(to_string(t)) + "'");
            }
        }
    }
}

}  // namespace

PropagationResult propagate(std::span<const PublicationSet> units, const PublicationSet& reference,
                            const ErrorModels& models, const PropagationConfig& cfg, const DrawSink& sink) {
    cfg.validate();
    check_models(models, cfg);
    for (const auto& unit : units) validate(unit);
    validate(reference);

    PropagationResult result;
    result.config = cfg;

    // observed indicators through the public API
    std::vector<PublicationSet> normalizing;
    if (cfg.universe == NormalizationUniverse::Pooled) normalizing.assign(units.begin(), units.end());
    normalizing.push_back(reference);
    const auto table = build_normalization(normalizing, cfg.key_mode);
    for (const auto& unit : units) result.observed.push_back(indicators_for(unit, table));

    const Universe universe = build_universe(units, reference, cfg);
    const Engine engine(universe, models, cfg);
    const std::size_t n_units = units.size();
    const std::size_t iterations = cfg.iterations;

    std::vector<UnitValues> values(n_units * iterations);
    auto run = [&](std::size_t j, Scratch& scratch, std::vector<PredictiveDraw>* dump) {
        engine.perturb(j, scratch);
        evaluate(universe, scratch, std::span<UnitValues>(values).subspan(j * n_units, n_units));
        if (dump) {
            dump->clear();
            dump->reserve(universe.items.size());
            for (std::size_t i = 0; i < universe.items.size(); ++i) {
                dump->push_back({j, universe.items[i].pub->id, scratch.citations[i], scratch.doctype[i]});
            }
        }
    };

    const unsigned workers = std::max(1u, cfg.workers);
    if (!sink) {
        constexpr std::size_t kBlock = 16;
        const std::size_t blocks = (iterations + kBlock - 1) / kBlock;
        parallel_for(blocks, workers, [&](std::size_t b) {
            Scratch scratch = engine.make_scratch();
            const auto end = std::min(iterations, (b + 1) * kBlock);
            for (std::size_t j = b * kBlock; j < end; ++j) run(j, scratch, nullptr);
        });
    } else {
        const std::size_t chunk = std::max<std::size_t>(1, 2 * workers);
        std::vector<Scratch> scratch(chunk);
        for (auto& s : scratch) s = engine.make_scratch();
        std::vector<std::vector<PredictiveDraw>> dumps(chunk);
        for (std::size_t start = 0; start < iterations; start += chunk) {
            const auto count = std::min(chunk, iterations - start);
            parallel_for(count, workers, [&](std::size_t k) { run(start + k, scratch[k], &dumps[k]); });
            for (std::size_t k = 0; k < count; ++k) sink(dumps[k]);
        }
    }

    for (std::size_t u = 0; u < n_units; ++u) {
        const auto& obs = result.observed[u];
        for (auto indicator : {Indicator::P, Indicator::C, Indicator::MNCS}) {
            IndicatorDistribution d;
            d.unit = units[u].name;
            d.indicator = indicator;
            d.replicates.resize(iterations);
            for (std::size_t j = 0; j < iterations; ++j) {
                const auto& v = values[j * n_units + u];
                d.replicates[j] = indicator == Indicator::P ? v.p : indicator == Indicator::C ? v.c : v.mncs;
                if (std::isnan(d.replicates[j])) ++d.undefined;
            }
            switch (indicator) {
                case Indicator::P: d.observed = static_cast<double>(obs.p); break;
                case Indicator::C: d.observed = static_cast<double>(obs.c); break;
                case Indicator::MNCS: d.observed = obs.mncs; break;
            }
            if (d.undefined < iterations) d.summary = summarize(d.replicates);
            result.distributions.push_back(std::move(d));
        }
    }
    return result;
}

}  // namespace bibunc
