#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/digest.hpp"
#include "icdoc/version.hpp"

namespace icdoc::tracker {

enum class Status { draft, published, failed, revision_required };

std::string_view to_string(Status s) noexcept;
std::optional<Status> status_from_string(std::string_view s) noexcept;

/// A pinned dependency on an exact published version.
struct Pin {
    std::string doc_id;
    Version version;
    friend bool operator==(const Pin&, const Pin&) = default;
};

struct Artifact {
    std::string path;
    Digest sha256;
    friend bool operator==(const Artifact&, const Artifact&) = default;
};

struct VersionRecord {
    Version version;
    std::string src;
    std::vector<Pin> refs;
    std::string build_location;
    std::vector<Artifact> artifacts;
    /// Wall-clock receipt time, for display only.
    std::string recorded_at;

    friend bool operator==(const VersionRecord&, const VersionRecord&) = default;
};

struct DocumentRecord {
    std::string doc_id;
    std::vector<VersionRecord> versions;
    Status status = Status::draft;
    std::string status_reason;
    /// Summary of the last failed build, cleared by the next publication.
    std::optional<std::string> pending_failure;

    const VersionRecord* latest() const noexcept { return versions.empty() ? nullptr : &versions.back(); }

    friend bool operator==(const DocumentRecord&, const DocumentRecord&) = default;
};

enum class EventKind { registered, published, build_failed, check_failed };

std::string_view to_string(EventKind k) noexcept;
std::optional<EventKind> event_kind_from_string(std::string_view s) noexcept;

struct TrackerEvent {
    std::uint64_t sequence = 0;
    EventKind kind = EventKind::registered;
    std::string doc_id;
    std::map<std::string, std::string> payload;

    friend bool operator==(const TrackerEvent&, const TrackerEvent&) = default;
};

struct StatusChange {
    std::string doc_id;
    Status from = Status::draft;
    Status to = Status::draft;
    std::string reason;

    friend bool operator==(const StatusChange&, const StatusChange&) = default;
};

class TrackerError : public std::runtime_error {
public:
    enum class Code { unknown_document, conflict, non_increasing_version, invalid, dangling_ref, cycle };

    TrackerError(Code code, const std::string& message) : std::runtime_error(message), code_(code) {}
    Code code() const noexcept { return code_; }

private:
    Code code_;
};

/// In-memory document registry and status state machine.
///
/// Status is a function of registry content:
///   FAILED             a build failure is pending
///   DRAFT              no published version
///   REVISION_REQUIRED  the latest version pins (d, v) with v older than d's
///                      latest published version
///   PUBLISHED          otherwise
///
/// Not synchronized; TrackerService serializes access.
class Registry {
public:
    const DocumentRecord& register_document(std::string_view doc_id);

    /// Append a published version and recompute all statuses. Returns every
    /// record whose status changed, the publisher included.
    std::vector<StatusChange> record_publication(std::string_view doc_id, VersionRecord version);

    std::vector<StatusChange> recompute_statuses();

    const DocumentRecord& record_build_failure(std::string_view doc_id, std::string summary);

    /// Log a consumer-side digest mismatch. Leaves document status untouched.
    const TrackerEvent& report_check_failure(std::string_view doc_id, std::string path, const Digest& expected,
                                             const Digest& actual, std::string reporter);

    const DocumentRecord& get(std::string_view doc_id) const;
    const DocumentRecord* find(std::string_view doc_id) const;
    std::vector<DocumentRecord> list() const;
    std::vector<TrackerEvent> events_for(std::string_view doc_id) const;
    const std::vector<TrackerEvent>& events() const noexcept { return events_; }
    std::uint64_t next_sequence() const noexcept { return next_sequence_; }

    /// doc_id -> documents referenced by any of its versions.
    std::map<std::string, std::set<std::string>> dependency_graph() const;

    /// Rebuild from persisted content. Throws TrackerError(invalid) when the
    /// content violates registry invariants.
    static Registry restore(std::vector<DocumentRecord> records, std::vector<TrackerEvent> events,
                            std::uint64_t next_sequence);

    friend bool operator==(const Registry&, const Registry&) = default;

private:
    DocumentRecord& mutable_record(std::string_view doc_id);
    const TrackerEvent& append_event(EventKind kind, std::string doc_id, std::map<std::string, std::string> payload);
    std::pair<Status, std::string> derive_status(const DocumentRecord& record) const;
    bool reaches(const std::string& from, const std::string& to) const;

    std::map<std::string, DocumentRecord, std::less<>> documents_;
    std::vector<TrackerEvent> events_;
    std::uint64_t next_sequence_ = 1;
};

} // namespace icdoc::tracker
