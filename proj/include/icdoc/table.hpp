#pragma once

#include <string>
#include <vector>

namespace icdoc {

/// Plain tabular content shared by generated document sections and register
/// descriptions. Cells are unescaped text.
struct Table {
    std::string caption;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

} // namespace icdoc
