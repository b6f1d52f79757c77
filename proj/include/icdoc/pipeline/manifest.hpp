#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/tracker/registry.hpp"
#include "icdoc/version.hpp"

namespace icdoc::pipeline {

/// Publication record of one ICD version.
///
/// JSON layout (UTF-8, keys in this order):
///   {"doc_id": ..., "version": ..., "src": ...,
///    "refs": [{"doc_id": ..., "version": ...}],
///    "artifacts": [{"path": ..., "sha256": ...}],
///    "build_location": "..." | null}
struct Manifest {
    std::string doc_id;
    Version version;
    std::string src;
    std::vector<tracker::Pin> refs;
    std::vector<tracker::Artifact> artifacts;
    std::optional<std::string> build_location;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

std::string manifest_to_json(const Manifest& manifest);

/// Throws ConfigError on malformed input, duplicate artifact paths or
/// invalid digests.
Manifest parse_manifest(std::string_view json_text);

} // namespace icdoc::pipeline
