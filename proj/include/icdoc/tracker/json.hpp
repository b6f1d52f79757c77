#pragma once

#include <filesystem>

#include <json.hpp>

#include "icdoc/tracker/registry.hpp"

namespace icdoc::tracker {

using Json = nlohmann::ordered_json;

Json to_json(const Pin& pin);
Json to_json(const Artifact& artifact);
Json to_json(const VersionRecord& version);
Json to_json(const DocumentRecord& record);
Json to_json(const TrackerEvent& event);
Json to_json(const StatusChange& change);

/// Parsers for request bodies and state files. Throw TrackerError(invalid).
Pin pin_from_json(const Json& j);
VersionRecord version_from_json(const Json& j);
DocumentRecord record_from_json(const Json& j);
TrackerEvent event_from_json(const Json& j);

/// Whole-registry state document:
///
///   {"format": "icdoc-tracker-state", "format_version": 1,
///    "next_sequence": N, "documents": [...], "events": [...]}
Json state_to_json(const Registry& registry);
Registry state_from_json(const Json& j);

/// Write the state file atomically (temporary file, then rename).
void save_state(const std::filesystem::path& path, const Registry& registry);

/// Load a state file; a missing file yields an empty registry.
Registry load_state(const std::filesystem::path& path);

} // namespace icdoc::tracker
