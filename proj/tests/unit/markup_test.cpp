#include <doctest.h>

#include <regex>
#include <set>

#include "icdoc/errors.hpp"
#include "icdoc/markup/expand.hpp"
#include "icdoc/markup/glossary.hpp"
#include "icdoc/markup/history.hpp"
#include "icdoc/markup/html.hpp"
#include "icdoc/markup/parse.hpp"
#include "icdoc/markup/scan.hpp"
#include "support.hpp"

using namespace icdoc;
using namespace icdoc::markup;

namespace {

const std::string header = "= T\n:doc-id: icd-x\n:version: 1.0\n\n";

std::size_t error_line(std::string_view source) {
    try {
        parse_document(source);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

} // namespace

TEST_CASE("header attributes") {
    auto doc = parse_document("= My Title\n:doc-id: icd-x\n:version: 2.1\n:owner: team A\n\nText.\n");
    CHECK(doc.title == "My Title");
    CHECK(doc.doc_id() == "icd-x");
    CHECK(doc.version() == Version::from_string("2.1"));
    REQUIRE(doc.attribute("owner"));
    CHECK(*doc.attribute("owner") == "team A");
    CHECK(doc.attributes.size() == 3);
    REQUIRE(doc.blocks.size() == 1);
    CHECK(doc.blocks[0].line == 6);
}

TEST_CASE("header errors") {
    CHECK(error_line("no title\n") == 1);
    CHECK(error_line("= T\n:version: 1.0\n\nx\n") == 1);
    CHECK(error_line("= T\n:doc-id: icd-x\n\nx\n") == 1);
    CHECK(error_line("= T\n:doc-id: 9bad\n:version: 1.0\n") == 1);
    CHECK(error_line("= T\n:doc-id: icd-x\n:version: v1\n") == 1);
    CHECK(error_line("= T\n:doc-id: icd-x\n:doc-id: icd-y\n:version: 1.0\n") == 3);
    CHECK(error_line("= T\n:doc-id: icd-x\nversion 1.0\n") == 3);

    try {
        parse_document("= T\n:doc-id: icd-x\n\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.message() == "missing required attribute version");
        CHECK(std::string(e.what()) == "line 1: missing required attribute version");
    }
}

TEST_CASE("block structure") {
    auto doc = parse_document(header +
                              "== Intro\n\nFirst line\nsecond line.\n\n* one\n* two\n  continued\n\n=== Sub\n"
                              "glossary::[]\ndoclog::[]\nreferences::[]\n");
    REQUIRE(doc.blocks.size() == 7);
    auto* h = doc.blocks[0].as<Heading>();
    REQUIRE(h);
    CHECK(h->level == 2);
    CHECK(h->text.raw == "Intro");
    CHECK(doc.blocks[0].line == 5);
    auto* p = doc.blocks[1].as<Paragraph>();
    REQUIRE(p);
    CHECK(p->text.raw == "First line\nsecond line.");
    CHECK(doc.blocks[1].line == 7);
    auto* l = doc.blocks[2].as<List>();
    REQUIRE(l);
    REQUIRE(l->items.size() == 2);
    CHECK(l->items[1].raw == "two\ncontinued");
    CHECK(l->items[1].line == 11);
    CHECK(doc.blocks[3].as<Heading>()->level == 3);
    CHECK(doc.blocks[4].as<MacroBlock>()->kind == MacroKind::glossary);
    CHECK(doc.blocks[5].as<MacroBlock>()->kind == MacroKind::doclog);
    CHECK(doc.blocks[6].as<MacroBlock>()->kind == MacroKind::references);
}

TEST_CASE("heading and macro errors") {
    CHECK(error_line(header + "= Again\n") == 5);
    CHECK(error_line(header + "====== Deep\n") == 5);
    CHECK(error_line(header + "==NoSpace\n") == 5);
    CHECK(error_line(header + "text\n\nfoo::[]\n") == 7);
    CHECK(error_line(header + "glossary::[x]\n") == 5);
    CHECK(error_line(header + "a\nb widget:thing[x] c\n") == 6);
    CHECK(error_line(header + "x link:target\n") == 5);
    CHECK(error_line(header + "x term:ABC[label]\n") == 5);
    CHECK(error_line(header + "x icdref:icd-a[one]\n") == 5);
    // URLs and ordinary colons are text.
    CHECK_NOTHROW(parse_document(header + "see https://example.org/x[1] and ratio: 3\n"));
}

TEST_CASE("rdl fences") {
    auto doc = parse_document(header + "[rdl]\n----\naddrmap m {\n};\n----\nafter\n");
    REQUIRE(doc.blocks.size() == 2);
    auto* rdl = doc.blocks[0].as<RdlBlock>();
    REQUIRE(rdl);
    CHECK(rdl->source == "addrmap m {\n};\n");
    CHECK(rdl->open_fence == 6);
    CHECK(rdl->close_fence == 9);
    CHECK(rdl->first_line() == 7);
    CHECK(doc.blocks[0].line == 5);

    CHECK(error_line(header + "[rdl]\nno fence\n") == 5);
    CHECK(error_line(header + "[rdl]\n----\naddrmap m {};\n") == 6);
}

TEST_CASE("inline spans match a character-count oracle") {
    // Build paragraphs from random pieces; each node's span must start at the
    // sum of the lengths of the pieces before it.
    const std::vector<std::string> texts = {"plain words ", "more, text. ", "x ", "tail "};
    for (int round = 0; round < 200; ++round) {
        std::vector<std::pair<std::string, int>> pieces{{"begin ", 0}};  // text, kind: 0 text 1 link 2 term 3 icdref
        std::size_t count = testing::uniform(1, 6);
        for (std::size_t i = 0; i < count; ++i) {
            switch (testing::uniform(0, 3)) {
            case 0: pieces.emplace_back(texts[testing::uniform(0, texts.size() - 1)], 0); break;
            case 1: pieces.emplace_back("link:doc" + std::to_string(i) + ".html[label " + std::to_string(i) + "]", 1); break;
            case 2: pieces.emplace_back("term:T" + std::to_string(i) + "[]", 2); break;
            default: pieces.emplace_back("icdref:icd-" + std::to_string(i) + "[1." + std::to_string(i) + "]", 3); break;
            }
            if (pieces.back().second != 0) pieces.emplace_back(" ", 0);
        }
        pieces.emplace_back("end", 0);
        // Adjacent text pieces form one run.
        std::vector<std::pair<std::string, int>> merged;
        for (auto& p : pieces) {
            if (!merged.empty() && p.second == 0 && merged.back().second == 0) merged.back().first += p.first;
            else merged.push_back(p);
        }
        std::string raw;
        for (auto& p : merged) raw += p.first;

        auto doc = parse_document(header + raw + "\n");
        REQUIRE(doc.blocks.size() == 1);
        const auto& text = doc.blocks[0].as<Paragraph>()->text;
        CAPTURE(raw);
        REQUIRE(text.nodes.size() == merged.size());
        std::size_t offset = 0;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            const auto& node = text.nodes[i];
            CHECK(node.span.begin == offset);
            CHECK(node.span.end == offset + merged[i].first.size());
            CHECK(raw.substr(node.span.begin, node.span.end - node.span.begin) == merged[i].first);
            CHECK(node.content.index() == static_cast<std::size_t>(merged[i].second));
            CHECK(node.line == 5);
            offset += merged[i].first.size();
        }
        CHECK(offset == raw.size());
    }
}

TEST_CASE("inline node contents") {
    auto doc = parse_document(header + "See link:a/b.html#x[the doc], term:SPI[] and icdref:icd-b[1.2].\n");
    const auto& nodes = doc.blocks[0].as<Paragraph>()->text.nodes;
    REQUIRE(nodes.size() == 7);
    CHECK(std::get<Link>(nodes[1].content) == Link{"a/b.html#x", "the doc"});
    CHECK(std::get<TermRef>(nodes[3].content).name == "SPI");
    auto ref = std::get<IcdRef>(nodes[5].content);
    CHECK(ref.doc_id == "icd-b");
    CHECK(ref.version == Version::from_string("1.2"));
    CHECK_FALSE(ref.location);
    CHECK(doc.blocks[0].as<Paragraph>()->text.plain() == "See the doc, SPI and icd-b 1.2.");
}

TEST_CASE("multi-line paragraphs track node lines") {
    auto doc = parse_document(header + "first\nsecond link:x[y]\nthird term:Z[]\n");
    const auto& nodes = doc.blocks[0].as<Paragraph>()->text.nodes;
    REQUIRE(nodes.size() == 4);
    CHECK(nodes[0].line == 5);
    CHECK(nodes[1].line == 6);
    CHECK(nodes[2].line == 6);
    CHECK(nodes[3].line == 7);
}

TEST_CASE("abbreviations match a regex oracle") {
    const std::vector<std::string> words = {"ICD", "SPI", "the", "Bus", "A", "X1", "CAN2B", "mixedCASE",
                                            "FOO_BAR", "ok", "RS422", "I2C", "A_B", "7UP", "UART"};
    const std::regex caps(R"(\b[A-Z][A-Z0-9]+\b)");
    for (int round = 0; round < 300; ++round) {
        std::string source;
        std::string visible;  // the text scanned by the oracle
        std::size_t lines = testing::uniform(1, 3);
        for (std::size_t l = 0; l < lines; ++l) {
            std::size_t n = testing::uniform(1, 6);
            for (std::size_t i = 0; i < n; ++i) {
                const auto& w = words[testing::uniform(0, words.size() - 1)];
                switch (testing::uniform(0, 4)) {
                case 0:
                    source += "term:" + w + "[]";
                    visible += " ";
                    break;
                case 1:
                    source += "link:f.html[" + w + " x]";
                    visible += " " + w + " x ";
                    break;
                default:
                    source += w;
                    visible += w;
                }
                const char* sep = testing::uniform(0, 1) ? " " : ", ";
                source += sep;
                visible += sep;
            }
            source += "end\n";
            visible += "end\n";
        }
        std::set<Abbreviation> expected;
        std::size_t line = 5;
        std::size_t start = 0;
        while (start < visible.size()) {
            auto nl = visible.find('\n', start);
            std::string one = visible.substr(start, nl - start);
            for (std::sregex_iterator it(one.begin(), one.end(), caps), e; it != e; ++it) {
                expected.insert(Abbreviation{it->str(), line});
            }
            ++line;
            start = nl + 1;
        }
        auto doc = parse_document(header + source);
        CAPTURE(source);
        CHECK(extract_abbreviations(doc) == expected);
    }
}

TEST_CASE("links and references are extracted from source blocks") {
    auto doc = parse_document(header + "== H link:h.html[x]\n\n* link:https://example.org[ext] link:a.txt[a]\n"
                                       "\nicdref:icd-b[1.0] icdref:icd-a[2.0] icdref:icd-b[1.0.0] icdref:icd-b[0.9]\n");
    auto links = extract_links(doc);
    REQUIRE(links.size() == 2);
    CHECK(links[0] == LinkOccurrence{"h.html", 5});
    CHECK(links[1] == LinkOccurrence{"a.txt", 7});
    auto refs = icd_refs(doc);
    REQUIRE(refs.size() == 3);
    CHECK(refs[0].doc_id == "icd-a");
    CHECK(refs[1] == RefKey{"icd-b", Version::from_string("0.9")});
    CHECK(refs[2] == RefKey{"icd-b", Version::from_string("1.0")});

    CHECK(is_external_target("https://x"));
    CHECK(is_external_target("mailto:a@b"));
    CHECK_FALSE(is_external_target("c:/dir"));
    CHECK_FALSE(is_external_target("dir/file.html"));
}

TEST_CASE("glossary files") {
    auto lines = parse_glossary("# comment\n\nICD\tInterface Control Document\nSPI\tSerial bus\n");
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].term == "SPI");
    CHECK(lines[1].line == 4);
    CHECK_THROWS_AS(parse_glossary("ICD Interface\n"), ConfigError);
    CHECK_THROWS_AS(parse_glossary("\tdef\n"), ConfigError);
    CHECK_THROWS_AS(parse_glossary("A\tone\nA\ttwo\n"), ConfigError);
}

TEST_CASE("glossary merge") {
    auto g = Glossary::central(parse_glossary("ICD\tInterface Control Document\nSPI\tSerial bus\n"));
    g.merge_local(parse_glossary("SPI\tSomething else\nICD\tInterface Control Document\nFPGA\tGate array\n"), "local.txt");
    CHECK(g.find("SPI")->definition == "Serial bus");
    CHECK(g.find("SPI")->origin == TermOrigin::central);
    CHECK(g.find("FPGA")->origin == TermOrigin::local);
    REQUIRE(g.conflicts().size() == 1);
    CHECK(g.conflicts()[0] == GlossaryConflict{"SPI", "Serial bus", "Something else", "local.txt", 1});
    // The merged term set is the union of both files.
    std::set<std::string> terms;
    for (const auto& [t, e] : g.entries()) terms.insert(t);
    CHECK(terms == std::set<std::string>{"FPGA", "ICD", "SPI"});
}

TEST_CASE("history files") {
    auto h = parse_history("1.0\t2025-01-02\tA\tFirst\n1.1\t2025-02-03\tB\tSecond\n");
    REQUIRE(h.size() == 2);
    CHECK(h[1].author == "B");
    CHECK_THROWS_AS(parse_history("1.1\t2025-01-02\tA\tx\n1.0\t2025-02-03\tB\ty\n"), ConfigError);
    CHECK_THROWS_AS(parse_history("1.0\t2025-01-02\tA\tx\n1.0.0\t2025-02-03\tB\ty\n"), ConfigError);
    CHECK_THROWS_AS(parse_history("1.0\t02/01/2025\tA\tx\n"), ConfigError);
    CHECK_THROWS_AS(parse_history("1.0\t2025-01-02\tA\n"), ConfigError);
}

TEST_CASE("macro expansion") {
    auto doc = parse_document(header + "Uses term:SPI[] and term:ICD[] and term:NEW[]. Pins icdref:icd-b[1.0] "
                                       "and icdref:icd-c[2.0].\n\nglossary::[]\n\ndoclog::[]\n\nreferences::[]\n");
    auto g = Glossary::central(parse_glossary("ICD\tInterface Control Document\nSPI\tSerial bus\nCAN\tbus\n"));
    auto history = parse_history("0.9\t2025-01-01\tA\tdraft\n1.0\t2025-02-01\tB\tissue\n");
    ReferenceTable refs{{RefKey{"icd-b", Version::from_string("1.0")}, "https://docs/icd-b/1.0"}};
    auto out = expand_macros(doc, g, history, refs);

    REQUIRE(out.blocks.size() == 4);
    auto* gl = out.blocks[1].as<DefinitionList>();
    REQUIRE(gl);
    CHECK(out.blocks[1].origin == Origin::generated);
    std::set<std::string> listed;
    for (const auto& d : gl->entries) listed.insert(d.term);
    CHECK(listed == term_refs(doc));
    CHECK(gl->entries[0] == Definition{"ICD", "Interface Control Document", true});
    CHECK(gl->entries[1].term == "NEW");
    CHECK_FALSE(gl->entries[1].defined);

    auto* log = out.blocks[2].as<Table>();
    REQUIRE(log);
    REQUIRE(log->rows.size() == 2);
    CHECK(log->rows[0][0] == "1.0");
    CHECK(log->rows[1][0] == "0.9");

    auto* refs_list = out.blocks[3].as<List>();
    REQUIRE(refs_list);
    REQUIRE(refs_list->items.size() == 2);
    CHECK(refs_list->items[0].plain().find("https://docs/icd-b/1.0") != std::string::npos);
    CHECK(refs_list->items[1].plain().find("unresolved") != std::string::npos);

    const auto& nodes = out.blocks[0].as<Paragraph>()->text.nodes;
    int resolved = 0;
    for (const auto& n : nodes) {
        if (auto* r = std::get_if<IcdRef>(&n.content); r && r->location) ++resolved;
    }
    CHECK(resolved == 1);

    // Expansion is deterministic and idempotent.
    CHECK(expand_macros(doc, g, history, refs) == out);
    CHECK(expand_macros(out, g, history, refs) == out);
}

TEST_CASE("empty glossary macro") {
    auto doc = parse_document(header + "No terms.\n\nglossary::[]\n");
    auto out = expand_macros(doc, Glossary{}, {}, {});
    REQUIRE(out.blocks[1].as<DefinitionList>());
    CHECK(out.blocks[1].as<DefinitionList>()->entries.empty());
}

TEST_CASE("term anchors are distinct") {
    std::set<std::string> anchors;
    for (auto t : {"A B", "A_B", "A-B", "a b", "A_20B", "AB"}) anchors.insert(term_anchor(t));
    CHECK(anchors.size() == 6);
    CHECK(term_anchor("ICD") == "term-ICD");
}

TEST_CASE("html rendering") {
    auto doc = parse_document(header + "== Intro <&>\n\nText with term:ICD[] and link:a.html[\"quoted\"].\n\n"
                                       "glossary::[]\n");
    auto g = Glossary::central(parse_glossary("ICD\tInterface <Control> Document\n"));
    auto expanded = expand_macros(doc, g, {}, {});
    auto html = render(expanded, {});
    CHECK(html.find("<h2 id=\"sec-intro\">Intro &lt;&amp;&gt;</h2>") != std::string::npos);
    CHECK(html.find("href=\"#term-ICD\"") != std::string::npos);
    CHECK(html.find("<dt id=\"term-ICD\">ICD</dt>") != std::string::npos);
    CHECK(html.find("Interface &lt;Control&gt; Document") != std::string::npos);
    CHECK(html.find("&quot;quoted&quot;") != std::string::npos);
    CHECK(render(expanded, {}) == html);
    // Unexpanded macros and mismatched table counts are refused.
    CHECK_THROWS_AS(render(doc, {}), std::invalid_argument);
    std::vector<RegisterTables> extra(1);
    CHECK_THROWS_AS(render(expanded, extra), std::invalid_argument);
}
