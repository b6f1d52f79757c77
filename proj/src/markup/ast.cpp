#include "icdoc/markup/ast.hpp"

#include <stdexcept>

namespace icdoc::markup {

std::string RichText::plain() const {
    std::string out;
    for (const auto& node : nodes) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, TextRun>) out += n.value;
                else if constexpr (std::is_same_v<T, Link>) out += n.label.empty() ? n.target : n.label;
                else if constexpr (std::is_same_v<T, TermRef>) out += n.name;
                else out += n.doc_id + " " + n.version.to_string();
            },
            node.content);
    }
    return out;
}

std::string_view macro_name(MacroKind kind) noexcept {
    switch (kind) {
    case MacroKind::glossary: return "glossary";
    case MacroKind::doclog: return "doclog";
    case MacroKind::references: return "references";
    }
    return "";
}

const std::string* Document::attribute(std::string_view name) const noexcept {
    for (const auto& [key, value] : attributes) {
        if (key == name) return &value;
    }
    return nullptr;
}

const std::string& Document::doc_id() const {
    if (auto* id = attribute("doc-id")) return *id;
    throw std::logic_error("document has no doc-id attribute");
}

Version Document::version() const {
    if (auto* v = attribute("version")) return Version::from_string(*v);
    throw std::logic_error("document has no version attribute");
}

std::string term_anchor(std::string_view term) {
    // Injective: anything outside [A-Za-z0-9-] becomes _XX.
    static constexpr char hexdigits[] = "0123456789abcdef";
    std::string out = "term-";
    for (unsigned char c : term) {
        bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
        if (keep) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('_');
            out.push_back(hexdigits[c >> 4]);
            out.push_back(hexdigits[c & 0xF]);
        }
    }
    return out;
}

} // namespace icdoc::markup
