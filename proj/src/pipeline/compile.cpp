#include "icdoc/pipeline/compile.hpp"

#include <set>

#include "icdoc/errors.hpp"
#include "icdoc/markup/html.hpp"
#include "icdoc/markup/parse.hpp"
#include "icdoc/rdl/parse.hpp"

namespace icdoc::pipeline {

std::vector<rdl::RegisterMap> parse_register_maps(const markup::Document& doc) {
    std::vector<rdl::RegisterMap> maps;
    std::set<std::string> names;
    for (const auto& block : doc.blocks) {
        const auto* rdl_block = block.as<markup::RdlBlock>();
        if (!rdl_block) continue;
        auto map = rdl::parse_rdl(rdl_block->source, rdl_block->first_line());
        if (!names.insert(map.name).second) {
            throw ParseError(block.line, "addrmap '" + map.name + "' is defined in more than one rdl block");
        }
        maps.push_back(std::move(map));
    }
    return maps;
}

Compiled compile(const CompileInputs& inputs) {
    auto doc = markup::parse_document(inputs.source);
    auto maps = parse_register_maps(doc);

    markup::Glossary glossary;
    for (std::size_t i = 0; i < inputs.glossaries.size(); ++i) {
        const auto& g = inputs.glossaries[i];
        auto lines = markup::parse_glossary(g.text, g.name);
        if (i == 0) glossary = markup::Glossary::central(lines);
        else glossary.merge_local(lines, g.name);
    }

    auto expanded = markup::expand_macros(doc, glossary, inputs.history, inputs.refs);
    auto report = gates::run_gates(expanded, maps, glossary, inputs.config, inputs.link_resolver);
    return Compiled{std::move(expanded), std::move(maps), std::move(glossary), std::move(report)};
}

std::vector<GeneratedFile> generate_artifacts(const Compiled& compiled, rdl::Mode mode,
                                              const rdl::PropertySet& required_field_props) {
    const auto& doc = compiled.document;
    std::vector<markup::RegisterTables> tables;
    for (const auto& map : compiled.maps) tables.push_back(rdl::render_tables(map));

    std::vector<GeneratedFile> files;
    files.push_back(GeneratedFile{doc.doc_id() + ".html", markup::render(doc, tables)});
    for (const auto& map : compiled.maps) {
        files.push_back(GeneratedFile{doc.doc_id() + "-" + map.name + ".h",
                                      rdl::generate_header(map, doc.doc_id(), doc.version(), mode, required_field_props)});
    }
    return files;
}

} // namespace icdoc::pipeline
