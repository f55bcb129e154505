#pragma once

#include <bibunc/error_models.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>

namespace bibunc {

// Posterior documents carry a "format" tag and a schema "version"; readers
// reject anything else.
inline constexpr const char* kNegBinPosteriorFormat = "bibunc.negbin-posterior";
inline constexpr const char* kDirichletPosteriorFormat = "bibunc.dirichlet-posterior";
inline constexpr int kPosteriorSchemaVersion = 1;

nlohmann::json to_json(const NegBinModelSpec& spec);
NegBinModelSpec negbin_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const McmcDiagnostics& d);

nlohmann::json to_json(const NegBinPosterior& posterior);
NegBinPosterior negbin_posterior_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DirichletPosterior& posterior);
DirichletPosterior dirichlet_posterior_from_json(const nlohmann::json& j);

/// Writes `j` pretty-printed with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json_file(const std::filesystem::path& path);

NegBinPosterior load_negbin_posterior(const std::filesystem::path& path);
DirichletPosterior load_dirichlet_posterior(const std::filesystem::path& path);

}  // namespace bibunc
