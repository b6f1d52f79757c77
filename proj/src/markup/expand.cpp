#include "icdoc/markup/expand.hpp"

#include <algorithm>

namespace icdoc::markup {

namespace {

void resolve_refs(RichText& text, const ReferenceTable& refs) {
    for (auto& node : text.nodes) {
        auto* ref = std::get_if<IcdRef>(&node.content);
        if (!ref) continue;
        auto it = refs.find(RefKey{ref->doc_id, ref->version});
        ref->location = it == refs.end() ? std::nullopt : std::optional<std::string>(it->second);
    }
}

DefinitionList glossary_section(const std::set<std::string>& terms, const Glossary& glossary) {
    DefinitionList list;
    for (const auto& term : terms) {
        if (const auto* entry = glossary.find(term)) list.entries.push_back(Definition{term, entry->definition, true});
        else list.entries.push_back(Definition{term, "", false});
    }
    return list;
}

Table doclog_section(std::span<const HistoryEntry> history) {
    Table table;
    table.caption = "Document log";
    table.header = {"Version", "Date", "Author", "Summary"};
    std::vector<HistoryEntry> sorted(history.begin(), history.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const HistoryEntry& a, const HistoryEntry& b) { return b.version < a.version; });
    for (const auto& h : sorted) table.rows.push_back({h.version.to_string(), h.date, h.author, h.summary});
    return table;
}

List references_section(const std::vector<RefKey>& keys, const ReferenceTable& refs, std::size_t line) {
    List list;
    for (const auto& key : keys) {
        RichText item;
        item.line = line;
        std::string head = key.doc_id + " " + key.version.to_string() + " — ";
        auto it = refs.find(key);
        if (it != refs.end()) {
            item.raw = head + it->second;
            item.nodes.push_back(InlineNode{TextRun{head}, Span{0, head.size()}, line});
            item.nodes.push_back(InlineNode{Link{it->second, it->second}, Span{head.size(), item.raw.size()}, line});
        } else {
            item.raw = head + "(unresolved)";
            item.nodes.push_back(InlineNode{TextRun{item.raw}, Span{0, item.raw.size()}, line});
        }
        list.items.push_back(std::move(item));
    }
    return list;
}

} // namespace

Document expand_macros(const Document& doc, const Glossary& glossary, std::span<const HistoryEntry> history,
                       const ReferenceTable& refs) {
    Document out = doc;
    for (auto& block : out.blocks) {
        if (block.origin != Origin::source) continue;
        if (auto* h = std::get_if<Heading>(&block.content)) resolve_refs(h->text, refs);
        else if (auto* p = std::get_if<Paragraph>(&block.content)) resolve_refs(p->text, refs);
        else if (auto* l = std::get_if<List>(&block.content)) {
            for (auto& item : l->items) resolve_refs(item, refs);
        }
    }

    auto terms = term_refs(out);
    auto keys = icd_refs(out);
    for (auto& block : out.blocks) {
        const auto* macro = block.as<MacroBlock>();
        if (!macro) continue;
        switch (macro->kind) {
        case MacroKind::glossary: block.content = glossary_section(terms, glossary); break;
        case MacroKind::doclog: block.content = doclog_section(history); break;
        case MacroKind::references: block.content = references_section(keys, refs, block.line); break;
        }
        block.origin = Origin::generated;
    }
    return out;
}

} // namespace icdoc::markup
