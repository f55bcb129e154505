#include "bibunc/manifest.hpp"

#include <bibunc/data_model.hpp>
#include <bibunc/serialization.hpp>

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <set>

namespace bibunc::cli {

namespace {

// Options naming files whose content feeds the computation.
const std::set<std::string> kInputOptions{"citation-sample", "doctype-confusion", "pubs",         "reference",
                                          "citation-model",  "doctype-model",     "report"};

const std::set<std::string> kUnrecorded{"help", "out", "workers", "config"};

std::string utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file: " + path.string());

    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 initialisation failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);

    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    for (unsigned i = 0; i < len; ++i) {
        hex += kHex[md[i] >> 4];
        hex += kHex[md[i] & 0xF];
    }
    return hex;
}

nlohmann::json make_manifest(const CLI::App& command) {
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json inputs = nlohmann::json::array();
    for (const CLI::Option* opt : command.get_options()) {
        std::string name = opt->get_lnames().empty() ? opt->get_name(true, false) : opt->get_lnames().front();
        if (name.empty() || kUnrecorded.count(name) > 0) continue;

        if (opt->get_expected_max() == 0) {
            config[name] = opt->count() > 0;
            continue;
        }
        if (opt->count() > 0) {
            const auto& res = opt->results();
            config[name] = res.size() == 1 ? nlohmann::json(res.front()) : nlohmann::json(res);
            if (kInputOptions.count(name) > 0) {
                for (const auto& path : res) inputs.push_back({{"option", name}, {"path", path}, {"sha256", sha256_file(path)}});
            }
        } else if (!opt->get_default_str().empty()) {
            config[name] = opt->get_default_str();
        }
    }
    return {{"format", kManifestFormat},
            {"version", 1},
            {"tool", "bibunc"},
            {"tool_version", BIBUNC_VERSION},
            {"command", command.get_name()},
            {"config", std::move(config)},
            {"inputs", std::move(inputs)},
            {"created_at", utc_now()}};
}

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest) {
    std::filesystem::create_directories(dir);
    write_json_file(dir / kManifestFile, manifest);
}

}  // namespace bibunc::cli
