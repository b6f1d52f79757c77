#include "icdoc/markup/parse.hpp"

#include <array>
#include <optional>

#include "icdoc/errors.hpp"

namespace icdoc::markup {

namespace {

bool is_blank(std::string_view s) {
    return s.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

bool is_alpha(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_word(char c) { return is_alpha(c) || (c >= '0' && c <= '9') || c == '_'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n'; }

std::vector<std::string_view> split_lines(std::string_view source) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= source.size()) {
        auto nl = source.find('\n', start);
        auto line = source.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        start = nl + 1;
    }
    // A trailing newline does not introduce an extra line.
    if (!lines.empty() && lines.back().empty() && !source.empty() && source.back() == '\n') lines.pop_back();
    return lines;
}

constexpr std::array<std::pair<std::string_view, MacroKind>, 3> block_macros{{
    {"glossary", MacroKind::glossary},
    {"doclog", MacroKind::doclog},
    {"references", MacroKind::references},
}};

/// Recognizes `name::[args]`. Returns nullopt for lines that are not block
/// macros at all; throws for malformed or unknown ones.
std::optional<MacroKind> match_block_macro(std::string_view line, std::size_t lineno) {
    auto text = trim(line);
    auto sep = text.find("::");
    if (sep == std::string_view::npos || sep == 0) return std::nullopt;
    auto name = text.substr(0, sep);
    if (!is_alpha(name.front())) return std::nullopt;
    for (char c : name) {
        if (!is_word(c) && c != '-') return std::nullopt;
    }

    std::optional<MacroKind> kind;
    for (const auto& [known, k] : block_macros) {
        if (name == known) kind = k;
    }
    auto rest = text.substr(sep + 2);
    bool bracketed = rest.size() >= 2 && rest.front() == '[' && rest.back() == ']';
    if (!kind) {
        if (bracketed) throw ParseError(lineno, "unknown block macro '" + std::string(name) + "'");
        return std::nullopt;
    }
    if (!bracketed) throw ParseError(lineno, "malformed block macro '" + std::string(name) + "', expected " + std::string(name) + "::[]");
    if (rest.size() != 2) throw ParseError(lineno, "block macro '" + std::string(name) + "' takes no arguments");
    return kind;
}

class InlineParser {
public:
    InlineParser(std::string_view raw, std::size_t first_line) : raw_(raw), first_line_(first_line) {}

    std::vector<InlineNode> run() {
        std::size_t i = 0;
        while (i < raw_.size()) {
            if (is_alpha(raw_[i]) && (i == 0 || !is_word(raw_[i - 1]))) {
                if (auto end = try_macro(i)) {
                    i = *end;
                    continue;
                }
            }
            ++i;
        }
        flush_text(raw_.size());
        return std::move(nodes_);
    }

private:
    std::size_t line_at(std::size_t offset) const {
        std::size_t line = first_line_;
        for (std::size_t k = 0; k < offset && k < raw_.size(); ++k) {
            if (raw_[k] == '\n') ++line;
        }
        return line;
    }

    void flush_text(std::size_t upto) {
        if (upto > text_start_) {
            nodes_.push_back(InlineNode{TextRun{std::string(raw_.substr(text_start_, upto - text_start_))},
                                        Span{text_start_, upto}, line_at(text_start_)});
        }
        text_start_ = upto;
    }

    // Returns the offset past the macro when one starts at `pos`.
    std::optional<std::size_t> try_macro(std::size_t pos) {
        std::size_t j = pos;
        while (j < raw_.size() && is_alpha(raw_[j])) ++j;
        if (j >= raw_.size() || raw_[j] != ':') return std::nullopt;
        auto name = raw_.substr(pos, j - pos);
        std::size_t target_begin = j + 1;
        if (target_begin >= raw_.size() || is_space(raw_[target_begin]) || raw_[target_begin] == ':') {
            return std::nullopt;
        }

        // Target runs to '[' and may not contain whitespace.
        std::size_t k = target_begin;
        while (k < raw_.size() && raw_[k] != '[' && !is_space(raw_[k])) ++k;
        std::optional<std::size_t> close;
        if (k < raw_.size() && raw_[k] == '[') {
            auto c = raw_.find_first_of("]\n", k + 1);
            if (c != std::string_view::npos && raw_[c] == ']') close = c;
        }

        bool known = name == "link" || name == "term" || name == "icdref";
        std::size_t line = line_at(pos);
        if (!known) {
            // Bare URLs such as https://host are plain text.
            if (close && raw_.substr(target_begin, 2) != "//") {
                throw ParseError(line, "unknown inline macro '" + std::string(name) + "'");
            }
            return std::nullopt;
        }
        if (!close) throw ParseError(line, "malformed " + std::string(name) + " macro, expected " + std::string(name) + ":<target>[...]");

        auto target = raw_.substr(target_begin, k - target_begin);
        auto label = raw_.substr(k + 1, *close - k - 1);
        InlineNode node;
        node.span = Span{pos, *close + 1};
        node.line = line;
        if (name == "link") {
            if (target.empty()) throw ParseError(line, "link target must not be empty");
            node.content = Link{std::string(target), std::string(label)};
        } else if (name == "term") {
            if (target.empty()) throw ParseError(line, "term name must not be empty");
            if (!label.empty()) throw ParseError(line, "term macro takes no label, expected term:" + std::string(target) + "[]");
            node.content = TermRef{std::string(target)};
        } else {
            if (!is_valid_doc_id(target)) throw ParseError(line, "invalid document id '" + std::string(target) + "' in icdref");
            auto version = Version::parse(trim(label));
            if (!version) throw ParseError(line, "invalid version '" + std::string(label) + "' in icdref");
            node.content = IcdRef{std::string(target), *version, std::nullopt};
        }
        flush_text(pos);
        nodes_.push_back(std::move(node));
        text_start_ = *close + 1;
        return *close + 1;
    }

    std::string_view raw_;
    std::size_t first_line_;
    std::size_t text_start_ = 0;
    std::vector<InlineNode> nodes_;
};

RichText make_rich_text(std::string raw, std::size_t line) {
    RichText text;
    text.nodes = InlineParser(raw, line).run();
    text.raw = std::move(raw);
    text.line = line;
    return text;
}

class BodyParser {
public:
    explicit BodyParser(Document& doc) : doc_(doc) {}

    void parse(const std::vector<std::string_view>& lines, std::size_t first) {
        for (std::size_t idx = first; idx < lines.size(); ++idx) {
            std::size_t lineno = idx + 1;
            auto line = lines[idx];

            if (is_blank(line)) {
                close();
                continue;
            }
            if (trim(line) == "[rdl]") {
                close();
                idx = parse_rdl_block(lines, idx);
                continue;
            }
            if (line.front() == '=') {
                close();
                parse_heading(line, lineno);
                continue;
            }
            if (auto macro = match_block_macro(line, lineno)) {
                close();
                doc_.blocks.push_back(Block{MacroBlock{*macro}, lineno, Origin::source});
                continue;
            }
            if (line.starts_with("* ")) {
                close_paragraph();
                if (!list_) list_.emplace(lineno);
                list_->items.emplace_back(std::string(line.substr(2)), lineno);
                continue;
            }
            if (list_) {
                // Continuation of the current list item.
                list_->items.back().first += "\n";
                list_->items.back().first += trim(line);
                continue;
            }
            if (!paragraph_) paragraph_.emplace(std::string(line), lineno);
            else {
                paragraph_->first += "\n";
                paragraph_->first += line;
            }
        }
        close();
    }

private:
    struct PendingList {
        explicit PendingList(std::size_t l) : line(l) {}
        std::size_t line;
        std::vector<std::pair<std::string, std::size_t>> items;
    };

    void parse_heading(std::string_view line, std::size_t lineno) {
        std::size_t level = 0;
        while (level < line.size() && line[level] == '=') ++level;
        auto rest = line.substr(level);
        if (is_blank(rest)) throw ParseError(lineno, "empty heading");
        if (rest.front() != ' ' && rest.front() != '\t') {
            throw ParseError(lineno, "malformed heading, expected a space after '" + std::string(level, '=') + "'");
        }
        if (level == 1) throw ParseError(lineno, "level-1 heading is reserved for the document title");
        if (level > 5) throw ParseError(lineno, "heading level " + std::to_string(level) + " exceeds 5");
        auto text = trim(rest);
        doc_.blocks.push_back(Block{Heading{static_cast<int>(level), make_rich_text(std::string(text), lineno)}, lineno,
                                    Origin::source});
    }

    std::size_t parse_rdl_block(const std::vector<std::string_view>& lines, std::size_t idx) {
        std::size_t marker = idx + 1;
        if (idx + 1 >= lines.size() || trim(lines[idx + 1]) != "----") {
            throw ParseError(marker, "expected '----' fence after [rdl]");
        }
        std::size_t open = idx + 2;
        std::string source;
        for (std::size_t k = idx + 2; k < lines.size(); ++k) {
            if (trim(lines[k]) == "----") {
                doc_.blocks.push_back(Block{RdlBlock{std::move(source), open, k + 1}, marker, Origin::source});
                return k;
            }
            source += lines[k];
            source += '\n';
        }
        throw ParseError(open, "unclosed rdl fence");
    }

    void close_paragraph() {
        if (!paragraph_) return;
        auto [raw, line] = std::move(*paragraph_);
        paragraph_.reset();
        doc_.blocks.push_back(Block{Paragraph{make_rich_text(std::move(raw), line)}, line, Origin::source});
    }

    void close_list() {
        if (!list_) return;
        List list;
        for (auto& [raw, line] : list_->items) list.items.push_back(make_rich_text(std::move(raw), line));
        doc_.blocks.push_back(Block{std::move(list), list_->line, Origin::source});
        list_.reset();
    }

    void close() {
        close_paragraph();
        close_list();
    }

    Document& doc_;
    std::optional<std::pair<std::string, std::size_t>> paragraph_;
    std::optional<PendingList> list_;
};

} // namespace

Document parse_document(std::string_view source) {
    auto lines = split_lines(source);
    if (lines.empty() || !lines[0].starts_with("= ") || is_blank(lines[0].substr(2))) {
        throw ParseError(1, "document must start with a '= <title>' line");
    }

    Document doc;
    doc.title = std::string(trim(lines[0].substr(2)));

    std::size_t idx = 1;
    for (; idx < lines.size() && !is_blank(lines[idx]); ++idx) {
        std::size_t lineno = idx + 1;
        auto line = lines[idx];
        auto close = line.size() > 1 && line[0] == ':' ? line.find(':', 1) : std::string_view::npos;
        if (close == std::string_view::npos || close == 1) {
            throw ParseError(lineno, "malformed header attribute, expected ':<name>: <value>'");
        }
        auto name = line.substr(1, close - 1);
        for (char c : name) {
            if (!is_word(c) && c != '-') throw ParseError(lineno, "invalid attribute name '" + std::string(name) + "'");
        }
        if (doc.attribute(name)) throw ParseError(lineno, "duplicate attribute '" + std::string(name) + "'");
        doc.attributes.emplace_back(std::string(name), std::string(trim(line.substr(close + 1))));
    }

    const auto* id = doc.attribute("doc-id");
    if (!id) throw ParseError(1, "missing required attribute doc-id");
    if (!is_valid_doc_id(*id)) throw ParseError(1, "invalid doc-id '" + *id + "'");
    const auto* version = doc.attribute("version");
    if (!version) throw ParseError(1, "missing required attribute version");
    if (!Version::parse(*version)) throw ParseError(1, "invalid version '" + *version + "'");

    BodyParser(doc).parse(lines, idx);
    return doc;
}

} // namespace icdoc::markup
