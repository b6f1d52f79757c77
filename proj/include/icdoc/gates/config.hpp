#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/rdl/validate.hpp"

namespace icdoc::gates {

enum class Severity { error, warning };

std::string_view to_string(Severity s) noexcept;

/// Every rule a gate report can contain.
inline constexpr std::string_view catalogue[] = {
    "G-LINK-1", "G-ABBR-1", "G-STYLE-1", "G-STYLE-2", "G-GLOSS-1", "G-META-1", "G-REF-1",
    "RDL-C1",   "RDL-C2",   "RDL-C3",    "RDL-C4",    "RDL-C5",    "RDL-C6",   "RDL-C7",
};

bool is_known_rule(std::string_view rule_id) noexcept;

struct GateConfig {
    std::size_t max_sentence_words = 40;
    std::vector<std::string> forbidden_phrases;
    std::set<std::string, std::less<>> abbreviation_allowlist;
    std::vector<std::string> required_sections;
    rdl::PropertySet required_field_props = rdl::default_required_props();
    std::map<std::string, Severity, std::less<>> severities = default_severities();
    std::size_t max_warnings = 10;

    static std::map<std::string, Severity, std::less<>> default_severities();

    /// Severity of a catalogue rule. Throws std::out_of_range for unknown ids.
    Severity severity(std::string_view rule_id) const;

    /// Throws ConfigError when the configuration is unusable.
    void validate() const;
};

/// Parse a JSON configuration document. Keys are optional; absent keys keep
/// their defaults and `severities` entries override individual rules.
///
///   {
///     "max_sentence_words": 40,
///     "forbidden_phrases": ["tbd"],
///     "abbreviation_allowlist": ["HZ"],
///     "required_sections": ["Introduction"],
///     "required_field_props": ["sw", "reset", "desc"],
///     "severities": {"G-ABBR-1": "error"},
///     "max_warnings": 10
///   }
///
/// Throws ConfigError on malformed input or unknown keys.
GateConfig parse_config(std::string_view json_text);

GateConfig load_config(const std::string& path);

} // namespace icdoc::gates
