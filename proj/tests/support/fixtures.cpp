#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace fixtures {

std::vector<std::int64_t> spread(std::int64_t total, std::size_t n) {
    std::vector<std::int64_t> out(n, 0);
    if (n == 0) return out;
    // weights 1, 2, 3, 1, 2, 3, ... then largest-remainder rounding
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(i % 3 + 1);
    const double sum = std::accumulate(w.begin(), w.end(), 0.0);
    std::int64_t assigned = 0;
    std::vector<std::pair<double, std::size_t>> rest;
    for (std::size_t i = 0; i < n; ++i) {
        const double exact = static_cast<double>(total) * w[i] / sum;
        out[i] = static_cast<std::int64_t>(std::floor(exact));
        assigned += out[i];
        rest.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(rest.begin(), rest.end(), [](auto a, auto b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[rest[k % n].second];
    return out;
}

void add_items(PublicationSet& set, const std::string& prefix, DocType type, const std::vector<std::int64_t>& cites) {
    for (std::size_t k = 0; k < cites.size(); ++k) {
        Publication p;
        p.id = set.name + "-" + prefix + std::to_string(k + 1);
        p.unit = set.name;
        p.doctype = type;
        p.citations = cites[k];
        set.members.push_back(std::move(p));
    }
}

namespace {

PublicationSet make(const std::string& name, SetRole role) { return PublicationSet{name, role, {}}; }

}  // namespace

Dataset exercise2_dataset() {
    Dataset d;
    auto a = make("A", SetRole::AssessedUnit);
    add_items(a, "art", DocType::Article, spread(76, 31));
    add_items(a, "let", DocType::Letter, {1, 0});
    add_items(a, "oth", DocType::Other, std::vector<std::int64_t>(7, 0));

    auto b = make("B", SetRole::AssessedUnit);
    add_items(b, "art", DocType::Article, spread(174, 35));
    add_items(b, "rev", DocType::Review, spread(11, 3));
    add_items(b, "let", DocType::Letter, {0, 1});
    add_items(b, "oth", DocType::Other, std::vector<std::int64_t>(10, 0));

    auto ref = make("ref", SetRole::ReferenceSet);
    add_items(ref, "art", DocType::Article, spread(640, 134));
    add_items(ref, "rev", DocType::Review, spread(59, 7));
    add_items(ref, "let", DocType::Letter, spread(3, 6));
    add_items(ref, "oth", DocType::Other, spread(2, 53));

    d.units = {std::move(a), std::move(b)};
    d.reference = std::move(ref);
    return d;
}

Dataset a1_dataset() {
    Dataset d;
    auto a = make("A", SetRole::AssessedUnit);
    add_items(a, "art", DocType::Article, spread(122, 16));
    add_items(a, "oth", DocType::Other, std::vector<std::int64_t>(4, 0));

    auto b = make("B", SetRole::AssessedUnit);
    add_items(b, "art", DocType::Article, spread(208, 18));
    add_items(b, "rev", DocType::Review, spread(30, 2));
    add_items(b, "let", DocType::Letter, {0, 1, 0});
    add_items(b, "oth", DocType::Other, std::vector<std::int64_t>(7, 0));

    auto ref = make("ref", SetRole::ReferenceSet);
    add_items(ref, "art", DocType::Article, spread(6670, 666));
    add_items(ref, "rev", DocType::Review, spread(570, 38));
    add_items(ref, "let", DocType::Letter, spread(20, 30));
    add_items(ref, "oth", DocType::Other, spread(30, 266));

    d.units = {std::move(a), std::move(b)};
    d.reference = std::move(ref);
    return d;
}

Dataset random_dataset(std::mt19937_64& rng, bool with_year_field) {
    std::uniform_int_distribution<int> type(0, 3);
    std::uniform_int_distribution<int> small(0, 4);
    std::geometric_distribution<int> cites(0.25);
    std::bernoulli_distribution zero(0.3);
    std::uniform_int_distribution<int> year(2010, 2011);
    std::uniform_int_distribution<int> field(0, 2);
    std::uniform_int_distribution<int> nunits(1, 3);
    std::uniform_int_distribution<int> size(0, 12);

    auto fill = [&](PublicationSet& set, int n) {
        for (int k = 0; k < n; ++k) {
            Publication p;
            p.id = set.name + "-" + std::to_string(k);
            p.unit = set.name;
            p.doctype = static_cast<DocType>(type(rng));
            p.citations = zero(rng) ? 0 : cites(rng);
            if (with_year_field) {
                if (small(rng) > 0) p.year = year(rng);
                const int f = field(rng);
                if (f < 2) p.field = "F" + std::to_string(f);
            }
            set.members.push_back(std::move(p));
        }
    };

    Dataset d;
    const int u = nunits(rng);
    for (int k = 0; k < u; ++k) {
        PublicationSet s{std::string(1, static_cast<char>('A' + k)), SetRole::AssessedUnit, {}};
        fill(s, size(rng));
        d.units.push_back(std::move(s));
    }
    d.reference = PublicationSet{"ref", SetRole::ReferenceSet, {}};
    fill(d.reference, size(rng) + 5);
    // the reference set sometimes also lists a unit's publication
    if (!d.units.front().members.empty() && small(rng) < 2) d.reference.members.push_back(d.units.front().members.front());
    return d;
}

std::vector<NaiveIndicators> naive_indicators(const Dataset& d, bool year_field, bool pooled) {
    std::vector<const Publication*> universe;
    std::set<std::string> seen;
    auto take = [&](const PublicationSet& s) {
        for (const auto& p : s.members) {
            if (seen.insert(p.id).second) universe.push_back(&p);
        }
    };
    take(d.reference);
    if (pooled) {
        for (const auto& u : d.units) take(u);
    }

    auto same_cell = [&](const Publication& x, const Publication& y) {
        if (x.doctype != y.doctype) return false;
        if (!year_field) return true;
        return x.year == y.year && x.field == y.field;
    };
    auto keyed = [&](const Publication& x) { return !year_field || (x.year.has_value() && x.field.has_value()); };

    std::vector<NaiveIndicators> out;
    for (const auto& unit : d.units) {
        NaiveIndicators r;
        double sum = 0.0;
        std::size_t included = 0;
        for (const auto& p : unit.members) {
            if (p.doctype != DocType::Article && p.doctype != DocType::Review) continue;
            ++r.p;
            r.c += p.citations;
            if (!keyed(p)) {
                ++r.excluded;
                continue;
            }
            std::int64_t total = 0;
            std::size_t n = 0;
            for (const auto* q : universe) {
                if (keyed(*q) && same_cell(p, *q)) {
                    total += q->citations;
                    ++n;
                }
            }
            if (n == 0) {
                ++r.excluded;
                continue;
            }
            const double mean = static_cast<double>(total) / static_cast<double>(n);
            if (mean == 0.0) {
                if (p.citations == 0) {
                    ++included;
                } else {
                    ++r.excluded;
                }
                continue;
            }
            sum += static_cast<double>(p.citations) / mean;
            ++included;
        }
        if (included > 0) r.mncs = sum / static_cast<double>(included);
        out.push_back(r);
    }
    return out;
}

double reference_negbin_logpmf(std::int64_t k, double mean, double dispersion) {
    const double kk = static_cast<double>(k);
    return std::lgamma(kk + dispersion) - std::lgamma(dispersion) - std::lgamma(kk + 1.0) +
           dispersion * std::log(dispersion / (dispersion + mean)) + kk * std::log(mean / (dispersion + mean));
}

CitationErrorSample negbin_sample(std::size_t n, double intercept, double slope, double dispersion,
                                  double predictor_meanlog, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::lognormal_distribution<double> pred(predictor_meanlog, 1.0);
    CitationErrorSample s;
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::int64_t>(std::floor(pred(rng)));
        const double mean = std::exp(intercept + slope * std::log(static_cast<double>(c) + 1.0));
        std::gamma_distribution<double> g(dispersion, mean / dispersion);
        std::poisson_distribution<std::int64_t> pois(g(rng));
        s.rows.push_back({c, pois(rng)});
    }
    return s;
}

std::vector<double> grid_posterior(const CitationErrorSample& sample, const NegBinModelSpec& spec, double slope,
                                   double dispersion, double lo, double hi, std::size_t bins) {
    std::vector<double> logp(bins);
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const double b0 = lo + (static_cast<double>(b) + 0.5) * width;
        const double z = (b0 - spec.intercept.mean) / spec.intercept.sd;
        double lp = -0.5 * z * z;
        for (const auto& r : sample.rows) {
            const auto predictor = spec.direction == ModelKind::SecondKind ? r.observed : r.observed + r.omitted;
            const double mean = std::exp(b0 + slope * std::log(static_cast<double>(predictor) + 1.0));
            lp += reference_negbin_logpmf(r.omitted, mean, dispersion);
        }
        logp[b] = lp;
    }
    const double top = *std::max_element(logp.begin(), logp.end());
    std::vector<double> mass(bins);
    double total = 0.0;
    for (std::size_t b = 0; b < bins; ++b) total += mass[b] = std::exp(logp[b] - top);
    for (auto& m : mass) m /= total;
    return mass;
}

TempDir::TempDir() {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("bibunc-test-" + std::to_string(rd()) + "-" + std::to_string(++counter));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace fixtures
