#include "icdoc/pipeline/manifest.hpp"

#include <set>

#include <json.hpp>

#include "icdoc/errors.hpp"

namespace icdoc::pipeline {

using Json = nlohmann::ordered_json;

std::string manifest_to_json(const Manifest& m) {
    Json refs = Json::array();
    for (const auto& r : m.refs) refs.push_back(Json{{"doc_id", r.doc_id}, {"version", r.version.to_string()}});
    Json artifacts = Json::array();
    for (const auto& a : m.artifacts) artifacts.push_back(Json{{"path", a.path}, {"sha256", a.sha256.hex()}});
    Json j{{"doc_id", m.doc_id}, {"version", m.version.to_string()}, {"src", m.src}, {"refs", refs},
           {"artifacts", artifacts}};
    j["build_location"] = m.build_location ? Json(*m.build_location) : Json(nullptr);
    return j.dump(2) + "\n";
}

namespace {

std::string text_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw ConfigError(std::string("manifest field '") + key + "' must be a string");
    return it->get<std::string>();
}

Version version_field(const Json& j, const char* key) {
    auto text = text_field(j, key);
    auto v = Version::parse(text);
    if (!v) throw ConfigError("manifest has invalid version '" + text + "'");
    return *v;
}

const Json& list_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_array()) throw ConfigError(std::string("manifest field '") + key + "' must be a list");
    return *it;
}

} // namespace

Manifest parse_manifest(std::string_view json_text) {
    Json j;
    try {
        j = Json::parse(json_text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("manifest must be a JSON object");

    Manifest m;
    m.doc_id = text_field(j, "doc_id");
    if (!is_valid_doc_id(m.doc_id)) throw ConfigError("manifest has invalid doc_id '" + m.doc_id + "'");
    m.version = version_field(j, "version");
    m.src = text_field(j, "src");
    for (const auto& r : list_field(j, "refs")) {
        if (!r.is_object()) throw ConfigError("manifest refs must be objects");
        m.refs.push_back(tracker::Pin{text_field(r, "doc_id"), version_field(r, "version")});
    }
    std::set<std::string> paths;
    for (const auto& a : list_field(j, "artifacts")) {
        if (!a.is_object()) throw ConfigError("manifest artifacts must be objects");
        auto path = text_field(a, "path");
        if (!paths.insert(path).second) throw ConfigError("duplicate artifact path '" + path + "'");
        auto hex = text_field(a, "sha256");
        auto d = Digest::parse(hex);
        if (!d) throw ConfigError("invalid sha256 digest for '" + path + "'");
        m.artifacts.push_back(tracker::Artifact{path, *d});
    }
    if (auto it = j.find("build_location"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) throw ConfigError("manifest field 'build_location' must be a string or null");
        m.build_location = it->get<std::string>();
    }
    return m;
}

} // namespace icdoc::pipeline
