#pragma once

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace bibunc::cli {

inline constexpr const char* kManifestFormat = "bibunc.manifest";
inline constexpr const char* kManifestFile = "manifest.json";

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Command name, every recorded option value (given or default), SHA-256
/// digests of the input files, tool version and a UTC timestamp. Options
/// that do not affect results (--out, --workers, --config) are left out.
nlohmann::json make_manifest(const CLI::App& command);

/// Writes `manifest.json` into `dir`, creating the directory if needed.
void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest);

}  // namespace bibunc::cli
