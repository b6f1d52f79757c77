#pragma once

#include <string_view>

#include "icdoc/markup/ast.hpp"

namespace icdoc::markup {

/// Parse ICD markup source into a Document.
///
/// Grammar summary:
///   = Title                       first line
///   :name: value                  header attributes until the first blank line;
///                                 doc-id and version are required
///   == Heading ... ===== Heading  section headings (levels 2-5)
///   * item                        list items
///   glossary::[] doclog::[] references::[]
///                                 block macros, alone on a line
///   [rdl] / ---- / ... / ----     embedded register description
///   link:target[label] term:NAME[] icdref:doc-id[version]
///                                 inline macros
///
/// Throws ParseError for malformed headers, unknown or malformed macros and
/// unclosed rdl fences.
Document parse_document(std::string_view source);

} // namespace icdoc::markup
