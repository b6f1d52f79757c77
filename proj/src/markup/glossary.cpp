#include "icdoc/markup/glossary.hpp"

#include <set>

#include "icdoc/errors.hpp"
#include "text_util.hpp"

namespace icdoc::markup {

Glossary Glossary::central(const std::vector<GlossaryLine>& lines) {
    Glossary g;
    for (const auto& line : lines) {
        g.entries_.insert_or_assign(line.term, GlossaryEntry{line.definition, TermOrigin::central});
    }
    return g;
}

void Glossary::merge_local(const std::vector<GlossaryLine>& lines, std::string_view source) {
    for (const auto& line : lines) {
        auto it = entries_.find(line.term);
        if (it == entries_.end()) {
            entries_.emplace(line.term, GlossaryEntry{line.definition, TermOrigin::local});
        } else if (it->second.definition != line.definition) {
            conflicts_.push_back(
                GlossaryConflict{line.term, it->second.definition, line.definition, std::string(source), line.line});
        }
    }
}

const GlossaryEntry* Glossary::find(std::string_view term) const {
    auto it = entries_.find(term);
    return it == entries_.end() ? nullptr : &it->second;
}

std::vector<GlossaryLine> parse_glossary(std::string_view text, std::string_view source) {
    std::vector<GlossaryLine> out;
    std::set<std::string, std::less<>> seen;
    std::size_t lineno = 0;
    for (auto line : detail::lines_of(text)) {
        ++lineno;
        if (detail::trim(line).empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        auto where = std::string(source) + ":" + std::to_string(lineno);
        if (tab == std::string_view::npos) throw ConfigError(where + ": expected TERM<TAB>definition");
        auto term = detail::trim(line.substr(0, tab));
        if (term.empty()) throw ConfigError(where + ": empty term");
        if (!seen.insert(std::string(term)).second) {
            throw ConfigError(where + ": term '" + std::string(term) + "' defined twice");
        }
        out.push_back(GlossaryLine{std::string(term), std::string(detail::trim(line.substr(tab + 1))), lineno});
    }
    return out;
}

} // namespace icdoc::markup
