#include "icdoc/gates/config.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "icdoc/errors.hpp"

namespace icdoc::gates {

using nlohmann::json;

std::string_view to_string(Severity s) noexcept {
    return s == Severity::error ? "error" : "warning";
}

bool is_known_rule(std::string_view rule_id) noexcept {
    return std::find(std::begin(catalogue), std::end(catalogue), rule_id) != std::end(catalogue);
}

std::map<std::string, Severity, std::less<>> GateConfig::default_severities() {
    std::map<std::string, Severity, std::less<>> out;
    for (auto rule : catalogue) out.emplace(rule, Severity::error);
    for (auto rule : {"G-ABBR-1", "G-STYLE-1", "G-STYLE-2"}) out[rule] = Severity::warning;
    return out;
}

Severity GateConfig::severity(std::string_view rule_id) const {
    auto it = severities.find(rule_id);
    if (it == severities.end()) throw std::out_of_range("no severity for rule '" + std::string(rule_id) + "'");
    return it->second;
}

void GateConfig::validate() const {
    if (max_sentence_words == 0) throw ConfigError("max_sentence_words must be positive");
    for (const auto& [rule, sev] : severities) {
        if (!is_known_rule(rule)) throw ConfigError("unknown rule id '" + rule + "' in severities");
    }
    for (auto rule : catalogue) {
        if (!severities.contains(rule)) throw ConfigError("no severity configured for '" + std::string(rule) + "'");
    }
    for (const auto& phrase : forbidden_phrases) {
        if (phrase.empty()) throw ConfigError("forbidden phrase must not be empty");
    }
    try {
        (void)rdl::normalize_props(required_field_props);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key) {
    if (!j.is_array()) throw ConfigError(std::string(key) + " must be a list of strings");
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) throw ConfigError(std::string(key) + " must be a list of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

std::size_t non_negative(const json& j, const char* key) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError(std::string(key) + " must be a non-negative integer");
    }
    return j.get<std::size_t>();
}

std::string lowercase(std::string s) {
    for (auto& c : s) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return s;
}

} // namespace

GateConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("gate config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("gate config must be a JSON object");

    GateConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "max_sentence_words") {
            config.max_sentence_words = non_negative(value, "max_sentence_words");
        } else if (key == "forbidden_phrases") {
            config.forbidden_phrases.clear();
            for (auto& p : string_list(value, "forbidden_phrases")) config.forbidden_phrases.push_back(lowercase(p));
        } else if (key == "abbreviation_allowlist") {
            auto items = string_list(value, "abbreviation_allowlist");
            config.abbreviation_allowlist = {items.begin(), items.end()};
        } else if (key == "required_sections") {
            config.required_sections = string_list(value, "required_sections");
        } else if (key == "required_field_props") {
            auto items = string_list(value, "required_field_props");
            config.required_field_props = {items.begin(), items.end()};
        } else if (key == "severities") {
            if (!value.is_object()) throw ConfigError("severities must be an object");
            for (const auto& [rule, sev] : value.items()) {
                if (!is_known_rule(rule)) throw ConfigError("unknown rule id '" + rule + "' in severities");
                if (sev == "error") config.severities[rule] = Severity::error;
                else if (sev == "warning") config.severities[rule] = Severity::warning;
                else throw ConfigError("severity for '" + rule + "' must be \"error\" or \"warning\"");
            }
        } else if (key == "max_warnings") {
            config.max_warnings = non_negative(value, "max_warnings");
        } else {
            throw ConfigError("unknown gate config key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

GateConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read gate config '" + path + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_config(text);
}

} // namespace icdoc::gates
