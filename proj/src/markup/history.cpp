#include "icdoc/markup/history.hpp"

#include "icdoc/errors.hpp"
#include "text_util.hpp"

namespace icdoc::markup {

namespace {

bool is_iso_date(std::string_view d) {
    if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (d[i] < '0' || d[i] > '9') return false;
    }
    int month = (d[5] - '0') * 10 + (d[6] - '0');
    int day = (d[8] - '0') * 10 + (d[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

} // namespace

std::vector<HistoryEntry> parse_history(std::string_view text) {
    std::vector<HistoryEntry> out;
    std::size_t lineno = 0;
    for (auto line : detail::lines_of(text)) {
        ++lineno;
        if (detail::trim(line).empty() || line.front() == '#') continue;
        auto where = "history:" + std::to_string(lineno);
        auto cols = detail::split_tabs(line);
        if (cols.size() != 4) throw ConfigError(where + ": expected version<TAB>date<TAB>author<TAB>summary");
        auto version = Version::parse(detail::trim(cols[0]));
        if (!version) throw ConfigError(where + ": invalid version '" + std::string(cols[0]) + "'");
        auto date = detail::trim(cols[1]);
        if (!is_iso_date(date)) throw ConfigError(where + ": invalid date '" + std::string(date) + "'");
        if (!out.empty() && !(out.back().version < *version)) {
            throw ConfigError(where + ": versions must be strictly increasing");
        }
        out.push_back(HistoryEntry{*version, std::string(date), std::string(detail::trim(cols[2])),
                                   std::string(detail::trim(cols[3]))});
    }
    return out;
}

} // namespace icdoc::markup
