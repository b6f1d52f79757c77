#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "icdoc/markup/ast.hpp"

namespace icdoc::markup {

struct LinkOccurrence {
    std::string target;
    std::size_t line = 0;
    friend bool operator==(const LinkOccurrence&, const LinkOccurrence&) = default;
};

struct Abbreviation {
    std::string token;
    std::size_t line = 0;
    friend auto operator<=>(const Abbreviation&, const Abbreviation&) = default;
};

/// Identity of an inter-document reference.
struct RefKey {
    std::string doc_id;
    Version version;

    friend std::weak_ordering operator<=>(const RefKey& a, const RefKey& b) {
        if (auto c = a.doc_id <=> b.doc_id; c != 0) return c;
        return a.version <=> b.version;
    }
    friend bool operator==(const RefKey& a, const RefKey& b) { return (a <=> b) == 0; }
};

/// True for targets with a URI scheme (`https://`, `mailto:` ...), which are
/// not checked offline.
bool is_external_target(std::string_view target) noexcept;

/// Local link targets in source order. External URLs and generated content
/// are skipped.
std::vector<LinkOccurrence> extract_links(const Document& doc);

/// ALL-CAPS tokens (`[A-Z][A-Z0-9]+` bounded by non-word characters) in
/// heading, paragraph and list text. Text inside term references and rdl
/// blocks is excluded.
std::set<Abbreviation> extract_abbreviations(const Document& doc);

/// Names of all term references in source blocks.
std::set<std::string> term_refs(const Document& doc);

/// Distinct inter-document references, sorted.
std::vector<RefKey> icd_refs(const Document& doc);

/// Calls `fn(const RichText&)` for each heading, paragraph and list item of
/// source origin.
template <typename Fn>
void for_each_text(const Document& doc, Fn&& fn) {
    for (const auto& block : doc.blocks) {
        if (block.origin != Origin::source) continue;
        if (auto* h = block.as<Heading>()) fn(h->text);
        else if (auto* p = block.as<Paragraph>()) fn(p->text);
        else if (auto* l = block.as<List>()) {
            for (const auto& item : l->items) fn(item);
        }
    }
}

} // namespace icdoc::markup
