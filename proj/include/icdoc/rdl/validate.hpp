#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/rdl/model.hpp"

namespace icdoc::rdl {

/// Completeness rule catalogue.
///
/// RDL-C1  field lacks a required property
/// RDL-C2  fields of one register overlap
/// RDL-C3  field extends past regwidth
/// RDL-C4  register byte ranges overlap
/// RDL-C5  addrmap endianness unspecified
/// RDL-C6  register has no desc
/// RDL-C7  reset value does not fit the field
inline constexpr std::string_view rule_ids[] = {"RDL-C1", "RDL-C2", "RDL-C3", "RDL-C4",
                                                "RDL-C5", "RDL-C6", "RDL-C7"};

struct RdlViolation {
    std::string rule_id;
    std::string reg;
    std::string field;
    std::size_t line = 0;
    std::string message;

    friend bool operator==(const RdlViolation&, const RdlViolation&) = default;
};

/// Field property names accepted in a required set: sw, hw, reset, desc,
/// update_rate, name. `sw_access` and `hw_access` are aliases.
using PropertySet = std::set<std::string, std::less<>>;

PropertySet default_required_props();

/// Throws std::invalid_argument for an unknown property name.
PropertySet normalize_props(const PropertySet& props);

/// All catalogue violations ordered by source line.
std::vector<RdlViolation> validate_rdl(const RegisterMap& map,
                                       const PropertySet& required_field_props = default_required_props());

} // namespace icdoc::rdl
