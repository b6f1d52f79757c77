#pragma once

#include <string>
#include <utility>
#include <vector>

#include "icdoc/gates/config.hpp"
#include "icdoc/gates/gates.hpp"
#include "icdoc/markup/expand.hpp"
#include "icdoc/markup/glossary.hpp"
#include "icdoc/markup/history.hpp"
#include "icdoc/rdl/codegen.hpp"
#include "icdoc/rdl/model.hpp"

namespace icdoc::pipeline {

/// A glossary file's name and contents. The first one given to a build is the
/// central glossary, later ones are document-local layers.
struct GlossarySource {
    std::string name;
    std::string text;
};

/// Everything a build needs, already read into memory.
struct CompileInputs {
    std::string source;
    std::vector<GlossarySource> glossaries;
    std::vector<markup::HistoryEntry> history;
    markup::ReferenceTable refs;
    gates::GateConfig config;
    gates::LinkResolver link_resolver;
};

/// Result of parse -> rdl -> glossary merge -> macro expansion -> gates.
struct Compiled {
    markup::Document document;
    std::vector<rdl::RegisterMap> maps;
    markup::Glossary glossary;
    gates::GateReport report;
};

/// Throws ParseError for syntax errors and ConfigError for bad glossaries.
Compiled compile(const CompileInputs& inputs);

/// Register maps of every rdl block, positioned at their document lines.
std::vector<rdl::RegisterMap> parse_register_maps(const markup::Document& doc);

struct GeneratedFile {
    std::string path;
    std::string contents;
};

/// The rendered HTML document and one header per register map, named
/// `<doc-id>.html` and `<doc-id>-<addrmap>.h`. In publish mode incomplete maps
/// are rejected with rdl::ValidationError.
std::vector<GeneratedFile> generate_artifacts(const Compiled& compiled, rdl::Mode mode,
                                              const rdl::PropertySet& required_field_props);

} // namespace icdoc::pipeline
