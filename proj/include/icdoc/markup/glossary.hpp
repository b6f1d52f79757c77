#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace icdoc::markup {

enum class TermOrigin { central, local };

struct GlossaryEntry {
    std::string definition;
    TermOrigin origin = TermOrigin::central;

    friend bool operator==(const GlossaryEntry&, const GlossaryEntry&) = default;
};

/// A line of a glossary file.
struct GlossaryLine {
    std::string term;
    std::string definition;
    std::size_t line = 0;
};

/// A local entry that redefines a central term differently. The central
/// definition is the one kept.
struct GlossaryConflict {
    std::string term;
    std::string central_definition;
    std::string local_definition;
    std::string source;
    std::size_t line = 0;

    friend bool operator==(const GlossaryConflict&, const GlossaryConflict&) = default;
};

/// Merged central + local glossary. Terms are case-sensitive and unique.
class Glossary {
public:
    Glossary() = default;

    static Glossary central(const std::vector<GlossaryLine>& lines);

    /// Layer document-specific entries over the glossary. New terms are added
    /// with local origin; redefinitions of central terms are recorded as
    /// conflicts.
    void merge_local(const std::vector<GlossaryLine>& lines, std::string_view source);

    const GlossaryEntry* find(std::string_view term) const;
    bool contains(std::string_view term) const { return find(term) != nullptr; }

    const std::map<std::string, GlossaryEntry, std::less<>>& entries() const noexcept { return entries_; }
    const std::vector<GlossaryConflict>& conflicts() const noexcept { return conflicts_; }

private:
    std::map<std::string, GlossaryEntry, std::less<>> entries_;
    std::vector<GlossaryConflict> conflicts_;
};

/// Parse `TERM<TAB>definition` lines. Blank lines and lines starting with '#'
/// are skipped. Throws ConfigError on a missing tab, empty term or a term
/// repeated within the same file.
std::vector<GlossaryLine> parse_glossary(std::string_view text, std::string_view source = "glossary");

} // namespace icdoc::markup
