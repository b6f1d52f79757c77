#include "icdoc/gates/gates.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "icdoc/markup/scan.hpp"
#include "icdoc/rdl/validate.hpp"

namespace icdoc::gates {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_alnum(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

std::string snippet(std::string_view text) {
    constexpr std::size_t max = 60;
    if (text.size() <= max) return std::string(text);
    return std::string(text.substr(0, max)) + "...";
}

/// Display text of a RichText with whitespace runs collapsed, and the source
/// line of every character.
struct FlatText {
    std::string text;
    std::vector<std::size_t> lines;

    explicit FlatText(const markup::RichText& rich) {
        for (const auto& node : rich.nodes) {
            std::size_t line = node.line;
            if (auto* run = std::get_if<markup::TextRun>(&node.content)) {
                for (char c : run->value) {
                    push(c, line);
                    if (c == '\n') ++line;
                }
            } else {
                markup::RichText single;
                single.nodes.push_back(node);
                for (char c : single.plain()) push(c, line);
            }
        }
        while (!text.empty() && text.back() == ' ') {
            text.pop_back();
            lines.pop_back();
        }
    }

    void push(char c, std::size_t line) {
        if (is_space(c)) {
            if (text.empty() || text.back() == ' ') return;
            c = ' ';
        }
        text.push_back(c);
        lines.push_back(line);
    }
};

struct Range {
    std::size_t begin;
    std::size_t end;
};

std::vector<Range> sentence_ranges(std::string_view text) {
    std::vector<Range> out;
    auto push = [&](std::size_t b, std::size_t e) {
        while (b < e && is_space(text[b])) ++b;
        while (e > b && is_space(text[e - 1])) --e;
        if (b < e) out.push_back({b, e});
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || is_space(text[i + 1]))) {
            push(start, i + 1);
            start = i + 1;
        }
    }
    push(start, text.size());
    return out;
}

std::size_t word_count(std::string_view sentence) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : sentence) {
        if (is_space(c)) in_word = false;
        else if (!in_word) {
            in_word = true;
            ++count;
        }
    }
    return count;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

class Evaluator {
public:
    Evaluator(const GateConfig& config) : config_(config) {}

    void add(std::string_view rule, std::size_t line, std::string context, std::string message) {
        out_.push_back(Violation{std::string(rule), config_.severity(rule), line, std::move(context), std::move(message)});
    }

    void style(const markup::RichText& rich) {
        FlatText flat(rich);
        for (auto [b, e] : sentence_ranges(flat.text)) {
            auto sentence = std::string_view(flat.text).substr(b, e - b);
            auto words = word_count(sentence);
            if (words > config_.max_sentence_words) {
                add("G-STYLE-1", flat.lines[b], snippet(sentence),
                    "sentence has " + std::to_string(words) + " words (max " +
                        std::to_string(config_.max_sentence_words) + ")");
            }
        }
        auto lower = ascii_lower(flat.text);
        for (const auto& phrase : config_.forbidden_phrases) {
            for (auto pos = lower.find(phrase); pos != std::string::npos; pos = lower.find(phrase, pos + 1)) {
                auto end = pos + phrase.size();
                bool left_ok = pos == 0 || !is_alnum(phrase.front()) || !is_alnum(lower[pos - 1]);
                bool right_ok = end == lower.size() || !is_alnum(phrase.back()) || !is_alnum(lower[end]);
                if (left_ok && right_ok) {
                    add("G-STYLE-2", flat.lines[pos], snippet(std::string_view(flat.text).substr(pos, phrase.size())),
                        "forbidden phrase '" + phrase + "'");
                }
            }
        }
    }

    std::vector<Violation> take() { return std::move(out_); }

private:
    const GateConfig& config_;
    std::vector<Violation> out_;
};

} // namespace

GateReport GateReport::from(std::vector<Violation> violations, std::size_t max_warnings) {
    std::stable_sort(violations.begin(), violations.end(), [](const Violation& a, const Violation& b) {
        if (a.line != b.line) return a.line < b.line;
        return a.rule_id < b.rule_id;
    });
    GateReport report;
    for (const auto& v : violations) {
        if (v.severity == Severity::error) ++report.errors;
        else ++report.warnings;
    }
    report.verdict = report.errors > 0 || report.warnings > max_warnings ? Verdict::fail : Verdict::pass;
    report.violations = std::move(violations);
    return report;
}

GateReport run_gates(const markup::Document& doc, std::span<const rdl::RegisterMap> maps,
                     const markup::Glossary& glossary, const GateConfig& config, const LinkResolver& link_resolver) {
    config.validate();
    Evaluator eval(config);

    for (const auto& section : config.required_sections) {
        auto wanted = ascii_lower(section);
        bool found = false;
        for (const auto& block : doc.blocks) {
            if (auto* h = block.as<markup::Heading>(); h && ascii_lower(h->text.plain()) == wanted) found = true;
        }
        if (!found) eval.add("G-META-1", 0, section, "missing required section '" + section + "'");
    }

    for (const auto& c : glossary.conflicts()) {
        eval.add("G-GLOSS-1", 0, c.term,
                 "local glossary " + c.source + ":" + std::to_string(c.line) + " redefines '" + c.term +
                     "'; the central definition is kept");
    }

    for (const auto& link : markup::extract_links(doc)) {
        if (!link_resolver || !link_resolver(link.target)) {
            eval.add("G-LINK-1", link.line, link.target, "broken link '" + link.target + "'");
        }
    }

    std::map<std::string, std::size_t> first_seen;
    for (const auto& abbr : markup::extract_abbreviations(doc)) first_seen.emplace(abbr.token, abbr.line);
    for (const auto& [token, line] : first_seen) {
        if (glossary.contains(token) || config.abbreviation_allowlist.contains(token)) continue;
        eval.add("G-ABBR-1", line, token, "abbreviation '" + token + "' is not defined in the glossary");
    }

    std::map<std::string, std::size_t> undefined_terms;
    std::map<markup::RefKey, std::size_t> unresolved;
    markup::for_each_text(doc, [&](const markup::RichText& text) {
        for (const auto& node : text.nodes) {
            if (auto* term = std::get_if<markup::TermRef>(&node.content); term && !glossary.contains(term->name)) {
                undefined_terms.emplace(term->name, node.line);
            } else if (auto* ref = std::get_if<markup::IcdRef>(&node.content); ref && !ref->location) {
                unresolved.emplace(markup::RefKey{ref->doc_id, ref->version}, node.line);
            }
        }
    });
    for (const auto& [term, line] : undefined_terms) {
        eval.add("G-ABBR-1", line, term, "term '" + term + "' is referenced but not defined in the glossary");
    }
    for (const auto& [key, line] : unresolved) {
        auto name = key.doc_id + " " + key.version.to_string();
        eval.add("G-REF-1", line, name, "reference to " + name + " is not resolved in the registry");
    }

    for (const auto& block : doc.blocks) {
        if (block.origin != markup::Origin::source) continue;
        if (auto* p = block.as<markup::Paragraph>()) eval.style(p->text);
        else if (auto* l = block.as<markup::List>()) {
            for (const auto& item : l->items) eval.style(item);
        }
    }

    for (const auto& map : maps) {
        for (auto& v : rdl::validate_rdl(map, config.required_field_props)) {
            std::string context = v.reg.empty() ? map.name : v.field.empty() ? v.reg : v.reg + "." + v.field;
            eval.add(v.rule_id, v.line, std::move(context), std::move(v.message));
        }
    }

    return GateReport::from(eval.take(), config.max_warnings);
}

std::vector<std::string> segment_sentences(std::string_view text) {
    std::vector<std::string> out;
    for (auto [b, e] : sentence_ranges(text)) out.emplace_back(text.substr(b, e - b));
    return out;
}

std::string report_to_text(const GateReport& report) {
    std::ostringstream out;
    for (const auto& v : report.violations) {
        out << to_string(v.severity) << ' ' << v.rule_id << " line " << v.line << ": " << v.message << '\n';
    }
    auto plural = [](std::size_t n, const char* word) {
        return std::to_string(n) + " " + word + (n == 1 ? "" : "s");
    };
    out << (report.passed() ? "PASS" : "FAIL") << " (" << plural(report.errors, "error") << ", "
        << plural(report.warnings, "warning") << ")\n";
    return out.str();
}

std::string report_to_json(const GateReport& report) {
    nlohmann::ordered_json j;
    j["verdict"] = report.passed() ? "pass" : "fail";
    j["errors"] = report.errors;
    j["warnings"] = report.warnings;
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : report.violations) {
        j["violations"].push_back({{"rule_id", v.rule_id},
                                   {"severity", to_string(v.severity)},
                                   {"line", v.line},
                                   {"context", v.context},
                                   {"message", v.message}});
    }
    return j.dump(2) + "\n";
}

} // namespace icdoc::gates
