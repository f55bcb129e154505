#pragma once

#include <bibunc/data_model.hpp>
#include <bibunc/error_models.hpp>
#include <bibunc/indicators.hpp>
#include <bibunc/simulation.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

using namespace bibunc;

/// n non-negative integers summing to `total`, uneven but deterministic.
std::vector<std::int64_t> spread(std::int64_t total, std::size_t n);

/// Appends items `prefix-k` of one type with the given citation counts.
void add_items(PublicationSet& set, const std::string& prefix, DocType type, const std::vector<std::int64_t>& cites);

struct Dataset {
    std::vector<PublicationSet> units;
    PublicationSet reference;
};

/// Two units and a reference set whose pooled doctype-only indicators are
/// P/C/MNCS = 31/76/0.5509 (A) and 38/185/1.0703 (B).
Dataset exercise2_dataset();

/// Pooled doctype-only indicators 16/122/0.7625 (A) and 20/238/1.14 (B).
Dataset a1_dataset();

/// Random small instance for property tests.
Dataset random_dataset(std::mt19937_64& rng, bool with_year_field);

struct NaiveIndicators {
    std::int64_t p = 0;
    std::int64_t c = 0;
    std::optional<double> mncs;
    std::size_t excluded = 0;
};

/// Straight loops over every publication, no shared code with the library.
std::vector<NaiveIndicators> naive_indicators(const Dataset& d, bool year_field, bool pooled);

/// Omitted-citation sample drawn from the regression with given parameters.
/// The predictor is lognormal(meanlog, 1) rounded down.
CitationErrorSample negbin_sample(std::size_t n, double intercept, double slope, double dispersion,
                                  double predictor_meanlog, std::uint64_t seed);

/// Posterior of the intercept on a uniform grid over [lo, hi] with `bins`
/// cells, for fixed slope and dispersion. Returns normalised cell masses.
std::vector<double> grid_posterior(const CitationErrorSample& sample, const NegBinModelSpec& spec, double slope,
                                   double dispersion, double lo, double hi, std::size_t bins);

/// log NegBin pmf computed from lgamma directly.
double reference_negbin_logpmf(std::int64_t k, double mean, double dispersion);

/// Temporary directory removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

}  // namespace fixtures
