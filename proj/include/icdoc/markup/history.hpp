#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "icdoc/version.hpp"

namespace icdoc::markup {

struct HistoryEntry {
    Version version;
    std::string date;
    std::string author;
    std::string summary;

    friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// Parse `version<TAB>date<TAB>author<TAB>summary` lines. Dates are ISO-8601
/// calendar dates (YYYY-MM-DD). Throws ConfigError unless versions are
/// strictly increasing.
std::vector<HistoryEntry> parse_history(std::string_view text);

} // namespace icdoc::markup
