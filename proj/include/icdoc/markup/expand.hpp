#pragma once

#include <map>
#include <span>
#include <string>

#include "icdoc/markup/ast.hpp"
#include "icdoc/markup/glossary.hpp"
#include "icdoc/markup/history.hpp"
#include "icdoc/markup/scan.hpp"

namespace icdoc::markup {

/// Canonical locations of referenced documents. A reference missing from the
/// table is unresolved.
using ReferenceTable = std::map<RefKey, std::string>;

/// Replace block macros with generated content and resolve icd references.
///
/// glossary::[]   definition list of exactly the referenced terms, by name
/// doclog::[]     revision table, newest first
/// references::[] one entry per distinct icd reference
///
/// Unresolved references and undefined terms are kept and marked rather than
/// rejected. Expanding an expanded document is a no-op.
Document expand_macros(const Document& doc, const Glossary& glossary,
                       std::span<const HistoryEntry> history, const ReferenceTable& refs);

} // namespace icdoc::markup
