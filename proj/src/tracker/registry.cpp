#include "icdoc/tracker/registry.hpp"

#include <algorithm>

namespace icdoc::tracker {

namespace {

constexpr std::pair<Status, std::string_view> status_names[] = {
    {Status::draft, "DRAFT"},
    {Status::published, "PUBLISHED"},
    {Status::failed, "FAILED"},
    {Status::revision_required, "REVISION_REQUIRED"},
};

constexpr std::pair<EventKind, std::string_view> event_names[] = {
    {EventKind::registered, "REGISTERED"},
    {EventKind::published, "PUBLISHED"},
    {EventKind::build_failed, "BUILD_FAILED"},
    {EventKind::check_failed, "CHECK_FAILED"},
};

} // namespace

std::string_view to_string(Status s) noexcept {
    for (auto [value, name] : status_names) {
        if (value == s) return name;
    }
    return "";
}

std::optional<Status> status_from_string(std::string_view s) noexcept {
    for (auto [value, name] : status_names) {
        if (name == s) return value;
    }
    return std::nullopt;
}

std::string_view to_string(EventKind k) noexcept {
    for (auto [value, name] : event_names) {
        if (value == k) return name;
    }
    return "";
}

std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept {
    for (auto [value, name] : event_names) {
        if (name == s) return value;
    }
    return std::nullopt;
}

const DocumentRecord& Registry::register_document(std::string_view doc_id) {
    if (!is_valid_doc_id(doc_id)) {
        throw TrackerError(TrackerError::Code::invalid, "invalid document id '" + std::string(doc_id) + "'");
    }
    if (documents_.contains(doc_id)) {
        throw TrackerError(TrackerError::Code::conflict, "document '" + std::string(doc_id) + "' is already registered");
    }
    auto [it, inserted] = documents_.emplace(std::string(doc_id), DocumentRecord{std::string(doc_id), {}, Status::draft, "", {}});
    append_event(EventKind::registered, std::string(doc_id), {});
    return it->second;
}

std::vector<StatusChange> Registry::record_publication(std::string_view doc_id, VersionRecord version) {
    auto& record = mutable_record(doc_id);
    const std::string id(doc_id);

    if (const auto* latest = record.latest(); latest && !(latest->version < version.version)) {
        throw TrackerError(TrackerError::Code::non_increasing_version,
                           id + " " + version.version.to_string() + " is not newer than published " +
                               latest->version.to_string());
    }
    if (version.build_location.empty()) {
        throw TrackerError(TrackerError::Code::invalid, "published versions need a build location");
    }

    std::set<std::string> artifact_paths;
    for (const auto& a : version.artifacts) {
        if (a.path.empty()) throw TrackerError(TrackerError::Code::invalid, "artifact path must not be empty");
        if (!artifact_paths.insert(a.path).second) {
            throw TrackerError(TrackerError::Code::invalid, "duplicate artifact path '" + a.path + "'");
        }
    }

    std::set<std::string> pinned;
    for (const auto& pin : version.refs) {
        if (pin.doc_id == id) throw TrackerError(TrackerError::Code::invalid, id + " cannot reference itself");
        if (!pinned.insert(pin.doc_id).second) {
            throw TrackerError(TrackerError::Code::invalid, "more than one pin for '" + pin.doc_id + "'");
        }
        const auto* target = find(pin.doc_id);
        bool published = target && std::any_of(target->versions.begin(), target->versions.end(),
                                                [&](const VersionRecord& v) { return v.version == pin.version; });
        if (!published) {
            throw TrackerError(TrackerError::Code::dangling_ref,
                               "reference to " + pin.doc_id + " " + pin.version.to_string() +
                                   " which is not a published version");
        }
        if (reaches(pin.doc_id, id)) {
            throw TrackerError(TrackerError::Code::cycle,
                               "reference from " + id + " to " + pin.doc_id + " would create a dependency cycle");
        }
    }

    // Statuses before the change, to report what moved.
    std::map<std::string, Status> before;
    for (const auto& [name, r] : documents_) before.emplace(name, r.status);

    auto version_text = version.version.to_string();
    record.versions.push_back(std::move(version));
    record.pending_failure.reset();
    append_event(EventKind::published, id, {{"version", version_text}});
    recompute_statuses();

    std::vector<StatusChange> changes;
    for (const auto& [name, r] : documents_) {
        if (before.at(name) != r.status) changes.push_back(StatusChange{name, before.at(name), r.status, r.status_reason});
    }
    return changes;
}

std::vector<StatusChange> Registry::recompute_statuses() {
    std::vector<StatusChange> changes;
    for (auto& [name, record] : documents_) {
        auto [status, reason] = derive_status(record);
        if (status != record.status || reason != record.status_reason) {
            if (status != record.status) changes.push_back(StatusChange{name, record.status, status, reason});
            record.status = status;
            record.status_reason = std::move(reason);
        }
    }
    return changes;
}

const DocumentRecord& Registry::record_build_failure(std::string_view doc_id, std::string summary) {
    auto& record = mutable_record(doc_id);
    record.pending_failure = summary;
    append_event(EventKind::build_failed, record.doc_id, {{"summary", std::move(summary)}});
    auto [status, reason] = derive_status(record);
    record.status = status;
    record.status_reason = std::move(reason);
    return record;
}

const TrackerEvent& Registry::report_check_failure(std::string_view doc_id, std::string path, const Digest& expected,
                                                   const Digest& actual, std::string reporter) {
    const auto& record = get(doc_id);
    return append_event(EventKind::check_failed, record.doc_id,
                        {{"path", std::move(path)},
                         {"expected", expected.hex()},
                         {"actual", actual.hex()},
                         {"reporter", std::move(reporter)}});
}

const DocumentRecord* Registry::find(std::string_view doc_id) const {
    auto it = documents_.find(doc_id);
    return it == documents_.end() ? nullptr : &it->second;
}

const DocumentRecord& Registry::get(std::string_view doc_id) const {
    if (const auto* r = find(doc_id)) return *r;
    throw TrackerError(TrackerError::Code::unknown_document, "unknown document '" + std::string(doc_id) + "'");
}

DocumentRecord& Registry::mutable_record(std::string_view doc_id) {
    auto it = documents_.find(doc_id);
    if (it == documents_.end()) {
        throw TrackerError(TrackerError::Code::unknown_document, "unknown document '" + std::string(doc_id) + "'");
    }
    return it->second;
}

std::vector<DocumentRecord> Registry::list() const {
    std::vector<DocumentRecord> out;
    for (const auto& [name, r] : documents_) out.push_back(r);
    return out;
}

std::vector<TrackerEvent> Registry::events_for(std::string_view doc_id) const {
    std::vector<TrackerEvent> out;
    for (const auto& e : events_) {
        if (e.doc_id == doc_id) out.push_back(e);
    }
    return out;
}

std::map<std::string, std::set<std::string>> Registry::dependency_graph() const {
    std::map<std::string, std::set<std::string>> graph;
    for (const auto& [name, record] : documents_) {
        auto& deps = graph[name];
        for (const auto& v : record.versions) {
            for (const auto& pin : v.refs) deps.insert(pin.doc_id);
        }
    }
    return graph;
}

bool Registry::reaches(const std::string& from, const std::string& to) const {
    auto graph = dependency_graph();
    std::set<std::string> seen;
    std::vector<std::string> stack{from};
    while (!stack.empty()) {
        auto node = std::move(stack.back());
        stack.pop_back();
        if (node == to) return true;
        if (!seen.insert(node).second) continue;
        for (const auto& next : graph[node]) stack.push_back(next);
    }
    return false;
}

const TrackerEvent& Registry::append_event(EventKind kind, std::string doc_id,
                                           std::map<std::string, std::string> payload) {
    events_.push_back(TrackerEvent{next_sequence_++, kind, std::move(doc_id), std::move(payload)});
    return events_.back();
}

std::pair<Status, std::string> Registry::derive_status(const DocumentRecord& record) const {
    if (record.pending_failure) return {Status::failed, *record.pending_failure};
    const auto* latest = record.latest();
    if (!latest) return {Status::draft, ""};

    std::string reason;
    for (const auto& pin : latest->refs) {
        const auto* target = find(pin.doc_id);
        if (!target || !target->latest()) continue;
        const auto& newest = target->latest()->version;
        if (pin.version < newest) {
            if (!reason.empty()) reason += "; ";
            reason += "based on " + pin.doc_id + " " + pin.version.to_string() +
                      ", which is no longer the most recent version (" + newest.to_string() + ")";
        }
    }
    if (!reason.empty()) return {Status::revision_required, reason};
    return {Status::published, ""};
}

Registry Registry::restore(std::vector<DocumentRecord> records, std::vector<TrackerEvent> events,
                           std::uint64_t next_sequence) {
    auto invalid = [](const std::string& m) { return TrackerError(TrackerError::Code::invalid, m); };
    Registry reg;
    for (auto& r : records) {
        if (!is_valid_doc_id(r.doc_id)) throw invalid("invalid document id '" + r.doc_id + "'");
        for (std::size_t i = 1; i < r.versions.size(); ++i) {
            if (!(r.versions[i - 1].version < r.versions[i].version)) {
                throw invalid("versions of '" + r.doc_id + "' are not strictly increasing");
            }
        }
        auto name = r.doc_id;
        if (!reg.documents_.emplace(name, std::move(r)).second) throw invalid("duplicate document '" + name + "'");
    }
    std::uint64_t last = 0;
    for (const auto& e : events) {
        if (e.sequence <= last) throw invalid("event sequence numbers are not strictly increasing");
        last = e.sequence;
    }
    if (next_sequence <= last) throw invalid("next sequence number precedes logged events");
    for (const auto& [name, deps] : reg.dependency_graph()) {
        for (const auto& d : deps) {
            if (reg.reaches(d, name)) throw invalid("dependency cycle through '" + name + "'");
        }
    }
    reg.events_ = std::move(events);
    reg.next_sequence_ = next_sequence;
    return reg;
}

} // namespace icdoc::tracker
