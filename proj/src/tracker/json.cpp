#include "icdoc/tracker/json.hpp"

#include <fstream>
#include <iterator>
#include <system_error>

namespace icdoc::tracker {

namespace {

constexpr std::string_view state_format = "icdoc-tracker-state";
constexpr int state_format_version = 1;

[[noreturn]] void invalid(const std::string& message) {
    throw TrackerError(TrackerError::Code::invalid, message);
}

const Json& member(const Json& j, const char* key) {
    if (!j.is_object()) invalid("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end()) invalid(std::string("missing field '") + key + "'");
    return *it;
}

std::string string_member(const Json& j, const char* key) {
    const auto& v = member(j, key);
    if (!v.is_string()) invalid(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::string optional_string(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return "";
    if (!it->is_string()) invalid(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

const Json& array_member(const Json& j, const char* key, bool required = true) {
    static const Json empty = Json::array();
    auto it = j.find(key);
    if (it == j.end()) {
        if (required) invalid(std::string("missing field '") + key + "'");
        return empty;
    }
    if (!it->is_array()) invalid(std::string("field '") + key + "' must be a list");
    return *it;
}

Version version_member(const Json& j, const char* key) {
    auto text = string_member(j, key);
    auto v = Version::parse(text);
    if (!v) invalid("invalid version '" + text + "'");
    return *v;
}

} // namespace

Json to_json(const Pin& pin) {
    return Json{{"doc_id", pin.doc_id}, {"version", pin.version.to_string()}};
}

Json to_json(const Artifact& artifact) {
    return Json{{"path", artifact.path}, {"sha256", artifact.sha256.hex()}};
}

Json to_json(const VersionRecord& v) {
    Json refs = Json::array();
    for (const auto& p : v.refs) refs.push_back(to_json(p));
    Json artifacts = Json::array();
    for (const auto& a : v.artifacts) artifacts.push_back(to_json(a));
    return Json{{"version", v.version.to_string()}, {"src", v.src},           {"refs", refs},
                {"build_location", v.build_location}, {"artifacts", artifacts}, {"recorded_at", v.recorded_at}};
}

Json to_json(const DocumentRecord& r) {
    Json versions = Json::array();
    for (const auto& v : r.versions) versions.push_back(to_json(v));
    Json j{{"doc_id", r.doc_id}, {"status", to_string(r.status)}, {"status_reason", r.status_reason}};
    j["pending_failure"] = r.pending_failure ? Json(*r.pending_failure) : Json(nullptr);
    j["latest_version"] = r.latest() ? Json(r.latest()->version.to_string()) : Json(nullptr);
    j["versions"] = versions;
    return j;
}

Json to_json(const TrackerEvent& e) {
    Json payload = Json::object();
    for (const auto& [k, v] : e.payload) payload[k] = v;
    return Json{{"sequence", e.sequence}, {"kind", to_string(e.kind)}, {"doc_id", e.doc_id}, {"payload", payload}};
}

Json to_json(const StatusChange& c) {
    return Json{{"doc_id", c.doc_id}, {"from", to_string(c.from)}, {"to", to_string(c.to)}, {"reason", c.reason}};
}

Pin pin_from_json(const Json& j) {
    return Pin{string_member(j, "doc_id"), version_member(j, "version")};
}

VersionRecord version_from_json(const Json& j) {
    VersionRecord v;
    v.version = version_member(j, "version");
    v.src = optional_string(j, "src");
    for (const auto& p : array_member(j, "refs", false)) v.refs.push_back(pin_from_json(p));
    v.build_location = optional_string(j, "build_location");
    for (const auto& a : array_member(j, "artifacts", false)) {
        auto hex = string_member(a, "sha256");
        auto d = Digest::parse(hex);
        if (!d) invalid("invalid sha256 digest '" + hex + "'");
        v.artifacts.push_back(Artifact{string_member(a, "path"), *d});
    }
    v.recorded_at = optional_string(j, "recorded_at");
    return v;
}

DocumentRecord record_from_json(const Json& j) {
    DocumentRecord r;
    r.doc_id = string_member(j, "doc_id");
    auto status = status_from_string(string_member(j, "status"));
    if (!status) invalid("unknown status for '" + r.doc_id + "'");
    r.status = *status;
    r.status_reason = optional_string(j, "status_reason");
    if (auto it = j.find("pending_failure"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) invalid("field 'pending_failure' must be a string");
        r.pending_failure = it->get<std::string>();
    }
    for (const auto& v : array_member(j, "versions")) r.versions.push_back(version_from_json(v));
    return r;
}

TrackerEvent event_from_json(const Json& j) {
    TrackerEvent e;
    const auto& seq = member(j, "sequence");
    if (!seq.is_number_unsigned()) invalid("event sequence must be a positive integer");
    e.sequence = seq.get<std::uint64_t>();
    auto kind = event_kind_from_string(string_member(j, "kind"));
    if (!kind) invalid("unknown event kind");
    e.kind = *kind;
    e.doc_id = string_member(j, "doc_id");
    const auto& payload = member(j, "payload");
    if (!payload.is_object()) invalid("event payload must be an object");
    for (const auto& [k, v] : payload.items()) {
        if (!v.is_string()) invalid("event payload values must be strings");
        e.payload.emplace(k, v.get<std::string>());
    }
    return e;
}

Json state_to_json(const Registry& registry) {
    Json docs = Json::array();
    for (const auto& r : registry.list()) docs.push_back(to_json(r));
    Json events = Json::array();
    for (const auto& e : registry.events()) events.push_back(to_json(e));
    return Json{{"format", state_format},
                {"format_version", state_format_version},
                {"next_sequence", registry.next_sequence()},
                {"documents", docs},
                {"events", events}};
}

Registry state_from_json(const Json& j) {
    if (string_member(j, "format") != state_format) invalid("not an icdoc tracker state file");
    const auto& fv = member(j, "format_version");
    if (!fv.is_number_integer() || fv.get<int>() != state_format_version) invalid("unsupported state format version");
    const auto& next = member(j, "next_sequence");
    if (!next.is_number_unsigned()) invalid("next_sequence must be a positive integer");

    std::vector<DocumentRecord> records;
    for (const auto& r : array_member(j, "documents")) records.push_back(record_from_json(r));
    std::vector<TrackerEvent> events;
    for (const auto& e : array_member(j, "events")) events.push_back(event_from_json(e));
    return Registry::restore(std::move(records), std::move(events), next.get<std::uint64_t>());
}

void save_state(const std::filesystem::path& path, const Registry& registry) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
        out << state_to_json(registry).dump(2) << '\n';
        out.flush();
        if (!out) throw std::runtime_error("error writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot replace '" + path.string() + "': " + ec.message());
}

Registry load_state(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        if (!std::filesystem::exists(path)) return Registry{};
        throw std::runtime_error("cannot read '" + path.string() + "'");
    }
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw TrackerError(TrackerError::Code::invalid, std::string("state file is not valid JSON: ") + e.what());
    }
    return state_from_json(j);
}

} // namespace icdoc::tracker
