#include "icdoc/markup/scan.hpp"

namespace icdoc::markup {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_word(char c) { return is_upper(c) || (c >= 'a' && c <= 'z') || is_digit(c) || c == '_'; }

void scan_caps(std::string_view text, std::size_t line, std::set<Abbreviation>& out) {
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\n') {
            ++line;
            ++i;
            continue;
        }
        if (!is_word(text[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < text.size() && is_word(text[end])) ++end;
        auto token = text.substr(i, end - i);
        bool caps = token.size() >= 2 && is_upper(token.front());
        for (std::size_t k = 1; caps && k < token.size(); ++k) caps = is_upper(token[k]) || is_digit(token[k]);
        if (caps) out.insert(Abbreviation{std::string(token), line});
        i = end;
    }
}

} // namespace

bool is_external_target(std::string_view target) noexcept {
    auto colon = target.find(':');
    if (colon == std::string_view::npos || colon < 2) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    if (!alpha(target.front())) return false;
    for (std::size_t i = 1; i < colon; ++i) {
        char c = target[i];
        if (!alpha(c) && !is_digit(c) && c != '+' && c != '.' && c != '-') return false;
    }
    return true;
}

std::vector<LinkOccurrence> extract_links(const Document& doc) {
    std::vector<LinkOccurrence> out;
    for_each_text(doc, [&](const RichText& text) {
        for (const auto& node : text.nodes) {
            if (auto* link = std::get_if<Link>(&node.content); link && !is_external_target(link->target)) {
                out.push_back(LinkOccurrence{link->target, node.line});
            }
        }
    });
    return out;
}

std::set<Abbreviation> extract_abbreviations(const Document& doc) {
    std::set<Abbreviation> out;
    for_each_text(doc, [&](const RichText& text) {
        for (const auto& node : text.nodes) {
            if (auto* run = std::get_if<TextRun>(&node.content)) scan_caps(run->value, node.line, out);
            else if (auto* link = std::get_if<Link>(&node.content)) scan_caps(link->label, node.line, out);
        }
    });
    return out;
}

std::set<std::string> term_refs(const Document& doc) {
    std::set<std::string> out;
    for_each_text(doc, [&](const RichText& text) {
        for (const auto& node : text.nodes) {
            if (auto* term = std::get_if<TermRef>(&node.content)) out.insert(term->name);
        }
    });
    return out;
}

std::vector<RefKey> icd_refs(const Document& doc) {
    std::set<RefKey> keys;
    for_each_text(doc, [&](const RichText& text) {
        for (const auto& node : text.nodes) {
            if (auto* ref = std::get_if<IcdRef>(&node.content)) keys.insert(RefKey{ref->doc_id, ref->version});
        }
    });
    return {keys.begin(), keys.end()};
}

} // namespace icdoc::markup
