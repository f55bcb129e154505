#include "bibunc/json_config.hpp"

#include <nlohmann/json.hpp>

namespace bibunc::cli {

namespace {

using nlohmann::json;

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_null()) return {};
    return v.dump();
}

void collect(const json& object, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, value] : object.items()) {
        if (value.is_object()) {
            parents.push_back(key);
            collect(value, parents, out);
            parents.pop_back();
            continue;
        }
        // an unset flag is recorded as false
        if (value.is_boolean() && !value.get<bool>()) continue;
        CLI::ConfigItem item;
        item.parents = parents;
        item.name = key;
        if (value.is_array()) {
            for (const auto& v : value) item.inputs.push_back(scalar_text(v));
        } else {
            item.inputs.push_back(scalar_text(value));
        }
        out.push_back(std::move(item));
    }
}

}  // namespace

std::string JsonConfig::to_config(const CLI::App* app, bool default_also, bool, std::string) const {
    json j = json::object();
    for (const CLI::Option* opt : app->get_options()) {
        if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
        const auto& name = opt->get_lnames().front();
        if (opt->count() > 0) {
            const auto& res = opt->results();
            j[name] = res.size() == 1 ? json(res.front()) : json(res);
        } else if (default_also && !opt->get_default_str().empty()) {
            j[name] = opt->get_default_str();
        }
    }
    return j.dump(2) + "\n";
}

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
    json j;
    try {
        j = json::parse(input);
    } catch (const json::exception& e) {
        throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");

    std::vector<CLI::ConfigItem> items;
    std::vector<std::string> parents;
    if (j.contains("command") && j.contains("config") && j["config"].is_object()) {
        parents.push_back(j["command"].get<std::string>());
        collect(j["config"], parents, items);
    } else {
        collect(j, parents, items);
    }
    return items;
}

}  // namespace bibunc::cli
