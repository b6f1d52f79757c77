#pragma once

#include <span>
#include <string>
#include <vector>

#include "icdoc/markup/ast.hpp"
#include "icdoc/table.hpp"

namespace icdoc::markup {

/// Register tables for one rdl block.
using RegisterTables = std::vector<Table>;

/// Render an expanded document to a self-contained HTML page.
///
/// `register_tables` holds one entry per rdl block in document order; each
/// block is replaced by its tables. Output is byte-deterministic.
/// Throws std::invalid_argument when the counts differ.
std::string render(const Document& doc, std::span<const RegisterTables> register_tables);

std::string escape_html(std::string_view text);

} // namespace icdoc::markup
