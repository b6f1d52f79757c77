#include "icdoc/markup/html.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace icdoc::markup {

namespace {

constexpr std::string_view stylesheet = R"(body{font-family:sans-serif;max-width:60em;margin:2em auto;line-height:1.4}
table{border-collapse:collapse;margin:1em 0}
th,td{border:1px solid #999;padding:.2em .5em;text-align:left;vertical-align:top}
caption{font-weight:bold;text-align:left}
.docinfo{color:#555}
.unresolved,.undefined{color:#b00}
)";

class HtmlWriter {
public:
    explicit HtmlWriter(std::span<const RegisterTables> tables) : tables_(tables) {}

    std::string run(const Document& doc) {
        out_ << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
        out_ << "<title>" << escape_html(doc.title) << "</title>\n";
        out_ << "<style>\n" << stylesheet << "</style>\n</head>\n<body>\n";
        out_ << "<h1>" << escape_html(doc.title) << "</h1>\n";
        out_ << "<dl class=\"docinfo\">\n";
        for (const auto& [name, value] : doc.attributes) {
            out_ << "<dt>" << escape_html(name) << "</dt><dd>" << escape_html(value) << "</dd>\n";
        }
        out_ << "</dl>\n";
        for (const auto& block : doc.blocks) write_block(block);
        if (next_table_ != tables_.size()) {
            throw std::invalid_argument("more register table sets than rdl blocks");
        }
        out_ << "</body>\n</html>\n";
        return out_.str();
    }

private:
    void write_block(const Block& block) {
        std::visit(
            [&](const auto& b) {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, Heading>) {
                    out_ << "<h" << b.level << " id=\"" << section_id(b.text.plain()) << "\">";
                    write_inlines(b.text);
                    out_ << "</h" << b.level << ">\n";
                } else if constexpr (std::is_same_v<T, Paragraph>) {
                    out_ << "<p>";
                    write_inlines(b.text);
                    out_ << "</p>\n";
                } else if constexpr (std::is_same_v<T, List>) {
                    out_ << "<ul>\n";
                    for (const auto& item : b.items) {
                        out_ << "<li>";
                        write_inlines(item);
                        out_ << "</li>\n";
                    }
                    out_ << "</ul>\n";
                } else if constexpr (std::is_same_v<T, MacroBlock>) {
                    throw std::invalid_argument("document contains unexpanded " + std::string(macro_name(b.kind)) +
                                                " macro at line " + std::to_string(block.line));
                } else if constexpr (std::is_same_v<T, RdlBlock>) {
                    if (next_table_ >= tables_.size()) {
                        throw std::invalid_argument("no register tables for rdl block at line " +
                                                    std::to_string(block.line));
                    }
                    out_ << "<section class=\"registers\">\n";
                    for (const auto& table : tables_[next_table_]) write_table(table);
                    out_ << "</section>\n";
                    ++next_table_;
                } else if constexpr (std::is_same_v<T, DefinitionList>) {
                    out_ << "<dl class=\"glossary\">\n";
                    for (const auto& entry : b.entries) {
                        out_ << "<dt id=\"" << term_anchor(entry.term) << "\">" << escape_html(entry.term) << "</dt>\n";
                        if (entry.defined) out_ << "<dd>" << escape_html(entry.definition) << "</dd>\n";
                        else out_ << "<dd class=\"undefined\">(undefined)</dd>\n";
                    }
                    out_ << "</dl>\n";
                } else {
                    write_table(b);
                }
            },
            block.content);
    }

    void write_inlines(const RichText& text) {
        for (const auto& node : text.nodes) {
            std::visit(
                [&](const auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, TextRun>) {
                        out_ << escape_html(n.value);
                    } else if constexpr (std::is_same_v<T, Link>) {
                        out_ << "<a href=\"" << escape_html(n.target) << "\">"
                             << escape_html(n.label.empty() ? n.target : n.label) << "</a>";
                    } else if constexpr (std::is_same_v<T, TermRef>) {
                        out_ << "<a class=\"term\" href=\"#" << term_anchor(n.name) << "\">" << escape_html(n.name)
                             << "</a>";
                    } else {
                        auto label = escape_html(n.doc_id + " " + n.version.to_string());
                        if (n.location) {
                            out_ << "<a class=\"icdref\" href=\"" << escape_html(*n.location) << "\">" << label
                                 << "</a>";
                        } else {
                            out_ << "<span class=\"icdref unresolved\">" << label << "</span>";
                        }
                    }
                },
                node.content);
        }
    }

    void write_table(const Table& table) {
        out_ << "<table>\n";
        if (!table.caption.empty()) out_ << "<caption>" << escape_html(table.caption) << "</caption>\n";
        out_ << "<thead><tr>";
        for (const auto& h : table.header) out_ << "<th>" << escape_html(h) << "</th>";
        out_ << "</tr></thead>\n<tbody>\n";
        for (const auto& row : table.rows) {
            out_ << "<tr>";
            for (const auto& cell : row) out_ << "<td>" << escape_html(cell) << "</td>";
            out_ << "</tr>\n";
        }
        out_ << "</tbody>\n</table>\n";
    }

    std::string section_id(const std::string& title) {
        std::string slug = "sec-";
        bool dash = false;
        for (unsigned char c : title) {
            if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
                slug.push_back(static_cast<char>(c));
                dash = false;
            } else if (c >= 'A' && c <= 'Z') {
                slug.push_back(static_cast<char>(c - 'A' + 'a'));
                dash = false;
            } else if (!dash) {
                slug.push_back('-');
                dash = true;
            }
        }
        while (slug.size() > 4 && slug.back() == '-') slug.pop_back();
        auto n = ++used_ids_[slug];
        return n == 1 ? slug : slug + "-" + std::to_string(n);
    }

    std::span<const RegisterTables> tables_;
    std::size_t next_table_ = 0;
    std::map<std::string, int> used_ids_;
    std::ostringstream out_;
};

} // namespace

std::string escape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&#39;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string render(const Document& doc, std::span<const RegisterTables> register_tables) {
    return HtmlWriter(register_tables).run(doc);
}

} // namespace icdoc::markup
