#pragma once

#include <CLI11.hpp>

namespace bibunc::cli {

/// Reads CLI11 configuration from JSON. Accepts either a run manifest
/// (values under "config", routed to the recorded command) or a plain object
/// whose nested objects name subcommands.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool write_description,
                          std::string prefix) const override;
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

}  // namespace bibunc::cli
