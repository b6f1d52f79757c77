#include <doctest.h>

#include "icdoc/errors.hpp"
#include "icdoc/gates/config.hpp"
#include "icdoc/gates/gates.hpp"
#include "icdoc/markup/expand.hpp"
#include "icdoc/markup/parse.hpp"
#include "icdoc/rdl/parse.hpp"
#include "oracles.hpp"

#include <json.hpp>
#include "support.hpp"

using namespace icdoc;
using namespace icdoc::gates;

namespace {

const std::string header = "= T\n:doc-id: icd-x\n:version: 1.0\n\n";

GateReport run(const std::string& body, const GateConfig& config = {}, const markup::Glossary& glossary = {},
               LinkResolver resolver = [](std::string_view) { return true; }) {
    auto doc = markup::expand_macros(markup::parse_document(header + body), glossary, {}, {});
    return run_gates(doc, {}, glossary, config, resolver);
}

std::vector<std::string> rules(const GateReport& r) {
    std::vector<std::string> out;
    for (const auto& v : r.violations) out.push_back(v.rule_id);
    return out;
}

} // namespace

TEST_CASE("default configuration") {
    GateConfig c;
    CHECK(c.max_sentence_words == 40);
    CHECK(c.max_warnings == 10);
    CHECK(c.required_field_props == rdl::PropertySet{"sw", "reset", "desc"});
    for (auto rule : catalogue) {
        bool warning = rule == "G-ABBR-1" || rule == "G-STYLE-1" || rule == "G-STYLE-2";
        CAPTURE(rule);
        CHECK(c.severity(rule) == (warning ? Severity::warning : Severity::error));
    }
}

TEST_CASE("configuration files") {
    auto c = parse_config(R"({"max_sentence_words": 12, "forbidden_phrases": ["Will Be"], "abbreviation_allowlist": ["HZ"],
                             "required_sections": ["Scope"], "required_field_props": ["sw_access"],
                             "severities": {"G-STYLE-1": "error"}, "max_warnings": 0})");
    CHECK(c.max_sentence_words == 12);
    CHECK(c.forbidden_phrases == std::vector<std::string>{"will be"});
    CHECK(c.abbreviation_allowlist.contains("HZ"));
    CHECK(c.severity("G-STYLE-1") == Severity::error);
    CHECK(c.severity("G-STYLE-2") == Severity::warning);
    CHECK(c.max_warnings == 0);

    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"unknown": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"max_sentence_words": 0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"max_warnings": -1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"severities": {"G-NOPE": "error"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"severities": {"G-LINK-1": "fatal"}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"required_field_props": ["colour"]})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("verdict decision table") {
    auto v = [](Severity s) { return Violation{"G-STYLE-1", s, 1, "", ""}; };
    for (std::size_t errors = 0; errors < 3; ++errors) {
        for (std::size_t warnings = 0; warnings < 14; ++warnings) {
            for (std::size_t limit : {0u, 5u, 10u}) {
                std::vector<Violation> vs;
                for (std::size_t i = 0; i < errors; ++i) vs.push_back(v(Severity::error));
                for (std::size_t i = 0; i < warnings; ++i) vs.push_back(v(Severity::warning));
                auto r = GateReport::from(vs, limit);
                CHECK(r.errors == errors);
                CHECK(r.warnings == warnings);
                CHECK(r.passed() == (errors == 0 && warnings <= limit));
            }
        }
    }
}

TEST_CASE("report ordering and text format") {
    std::vector<Violation> vs = {{"G-STYLE-1", Severity::warning, 9, "", "long"},
                                 {"G-LINK-1", Severity::error, 12, "x", "broken link 'x'"},
                                 {"G-ABBR-1", Severity::warning, 9, "", "abbr"},
                                 {"G-META-1", Severity::error, 0, "", "missing"}};
    auto r = GateReport::from(vs, 10);
    CHECK(rules(r) == std::vector<std::string>{"G-META-1", "G-ABBR-1", "G-STYLE-1", "G-LINK-1"});
    CHECK(report_to_text(r) ==
          "error G-META-1 line 0: missing\nwarning G-ABBR-1 line 9: abbr\nwarning G-STYLE-1 line 9: long\n"
          "error G-LINK-1 line 12: broken link 'x'\nFAIL (2 errors, 2 warnings)\n");
    CHECK(report_to_text(GateReport::from({vs[1]}, 10)) == "error G-LINK-1 line 12: broken link 'x'\nFAIL (1 error, 0 warnings)\n");
    CHECK(report_to_text(GateReport{}) == "PASS (0 errors, 0 warnings)\n");
    auto j = nlohmann::json::parse(report_to_json(r));
    CHECK(j["verdict"] == "fail");
    CHECK(j["violations"].size() == 4);
    CHECK(j["violations"][3]["rule_id"] == "G-LINK-1");
}

TEST_CASE("broken links") {
    auto resolver = [](std::string_view t) { return t == "ok.html"; };
    auto r = run("See link:ok.html[a], link:bad.html[b] and link:https://example.org[c].\n", {}, {}, resolver);
    CHECK(rules(r) == std::vector<std::string>{"G-LINK-1"});
    CHECK(r.violations[0].line == 5);
    CHECK(r.violations[0].context == "bad.html");
    CHECK_FALSE(r.passed());
}

TEST_CASE("abbreviations") {
    auto g = markup::Glossary::central(markup::parse_glossary("ICD\tx\n"));
    GateConfig c;
    c.abbreviation_allowlist = {"HZ"};
    auto r = run("The ICD runs at HZ rates.\nThe FPGA and the FPGA again.\n\nThen CAN and term:ICD[] and term:MISSING[].\n", c, g);
    CHECK(rules(r) == std::vector<std::string>{"G-ABBR-1", "G-ABBR-1", "G-ABBR-1"});
    CHECK(r.violations[0].context == "FPGA");
    CHECK(r.violations[0].line == 6);
    CHECK(r.violations[1].context == "CAN");
    CHECK(r.violations[2].context == "MISSING");
    CHECK(r.passed());
}

TEST_CASE("no abbreviation finding for glossary or allowlist tokens") {
    const std::vector<std::string> tokens = {"AB", "CD", "EF", "GH", "IJ", "KL"};
    for (int round = 0; round < 100; ++round) {
        std::string glossary_text;
        GateConfig c;
        std::set<std::string> known;
        for (const auto& t : tokens) {
            auto where = testing::uniform(0, 2);
            if (where == 0) glossary_text += t + "\tdef\n";
            if (where == 1) c.abbreviation_allowlist.insert(t);
            if (where != 2) known.insert(t);
        }
        auto g = markup::Glossary::central(markup::parse_glossary(glossary_text));
        std::string body;
        for (const auto& t : tokens) body += t + " ";
        body += "end\n";
        std::set<std::string> flagged;
        for (const auto& v : run(body, c, g).violations) flagged.insert(v.context);
        for (const auto& t : tokens) CHECK(flagged.contains(t) == !known.contains(t));
    }
}

TEST_CASE("sentence length agrees with the word-count oracle") {
    const std::vector<std::string> words = {"alpha", "beta", "gamma.", "delta", "eps!", "zeta?", "eta", "v1.2", "x"};
    for (int round = 0; round < 200; ++round) {
        std::string text;
        std::size_t n = testing::uniform(1, 60);
        for (std::size_t i = 0; i < n; ++i) text += (i ? " " : "") + words[testing::uniform(0, words.size() - 1)];
        GateConfig c;
        c.max_sentence_words = testing::uniform(1, 8);
        c.max_warnings = 1000;
        auto counts = oracle::sentence_word_counts(text);
        std::size_t expected = std::count_if(counts.begin(), counts.end(), [&](auto k) { return k > c.max_sentence_words; });
        auto r = run(text + "\n", c);
        CAPTURE(text);
        CHECK(r.violations.size() == expected);
        CHECK(segment_sentences(text).size() == counts.size());
    }
}

TEST_CASE("sentences spanning lines are reported at their first line") {
    GateConfig c;
    c.max_sentence_words = 3;
    auto r = run("One two.\nThree four five\nsix seven.\n", c);
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].line == 6);
}

TEST_CASE("forbidden phrases") {
    GateConfig c;
    c.forbidden_phrases = {"tbd", "as appropriate"};
    auto r = run("Values are tbd.\nUse them As\nappropriate. Not tbdx or xtbd.\n", c);
    CHECK(rules(r) == std::vector<std::string>{"G-STYLE-2", "G-STYLE-2"});
    CHECK(r.violations[0].line == 5);
    CHECK(r.violations[1].line == 6);
}

TEST_CASE("required sections") {
    GateConfig c;
    c.required_sections = {"Introduction", "Scope"};
    auto r = run("== introduction\n\n== Other\n", c);
    CHECK(rules(r) == std::vector<std::string>{"G-META-1"});
    CHECK(r.violations[0].line == 0);
    CHECK(r.violations[0].context == "Scope");
}

TEST_CASE("glossary conflicts") {
    auto g = markup::Glossary::central(markup::parse_glossary("ICD\tone\n"));
    g.merge_local(markup::parse_glossary("ICD\ttwo\n"), "local");
    auto r = run("Text.\n", {}, g);
    CHECK(rules(r) == std::vector<std::string>{"G-GLOSS-1"});
    CHECK_FALSE(r.passed());
}

TEST_CASE("unresolved references") {
    auto r = run("Pins icdref:icd-b[1.0] and icdref:icd-b[1.0] and icdref:icd-c[2.0].\n");
    CHECK(rules(r) == std::vector<std::string>{"G-REF-1", "G-REF-1"});
    auto doc = markup::parse_document(header + "Pins icdref:icd-b[1.0].\n");
    markup::ReferenceTable refs{{markup::RefKey{"icd-b", Version::from_string("1.0")}, "https://x"}};
    auto expanded = markup::expand_macros(doc, {}, {}, refs);
    CHECK(run_gates(expanded, {}, {}, {}, nullptr).violations.empty());
}

TEST_CASE("rdl findings are forwarded") {
    auto doc = markup::parse_document(header + "[rdl]\n----\naddrmap m {\n reg { field { sw = rw; } F[0:0]; } R @ 0;\n};\n----\n");
    std::vector<rdl::RegisterMap> maps{rdl::parse_rdl(doc.blocks[0].as<markup::RdlBlock>()->source, 7)};
    auto r = run_gates(doc, maps, {}, {}, nullptr);
    CHECK(rules(r) == std::vector<std::string>{"RDL-C5", "RDL-C1", "RDL-C1", "RDL-C6"});
    CHECK(r.violations[0].line == 7);
    CHECK(r.violations[1].line == 8);
}

TEST_CASE("warning threshold") {
    GateConfig c;
    c.max_warnings = 2;
    CHECK(run("AA BB.\n", c).passed());
    CHECK_FALSE(run("AA BB CC.\n", c).passed());
    c.severities["G-ABBR-1"] = Severity::error;
    CHECK_FALSE(run("AA.\n", c).passed());
}

TEST_CASE("gate fixture corpus") {
    auto dir = testing::fixtures() / "gates";
    auto config = load_config((dir / "config.json").string());
    auto central = markup::parse_glossary(testing::slurp(testing::fixtures() / "central.glossary"));
    struct Case {
        const char* file;
        const char* rule;
        bool passes;
    };
    for (auto c : {Case{"broken-link.icd", "G-LINK-1", false}, Case{"undefined-abbr.icd", "G-ABBR-1", true},
                   Case{"long-sentence.icd", "G-STYLE-1", true}, Case{"forbidden-phrase.icd", "G-STYLE-2", true},
                   Case{"glossary-conflict.icd", "G-GLOSS-1", false}, Case{"missing-section.icd", "G-META-1", false}}) {
        CAPTURE(c.file);
        auto g = markup::Glossary::central(central);
        if (std::string(c.file) == "glossary-conflict.icd") {
            g.merge_local(markup::parse_glossary(testing::slurp(dir / "conflict.glossary")), "conflict.glossary");
        }
        auto doc = markup::expand_macros(markup::parse_document(testing::slurp(dir / c.file)), g, {}, {});
        auto r = run_gates(doc, {}, g, config, [&](std::string_view t) { return std::filesystem::exists(dir / t); });
        CHECK(rules(r) == std::vector<std::string>{c.rule});
        CHECK(r.passed() == c.passes);
    }
}
