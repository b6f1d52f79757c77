#pragma once

#include <cstddef>
#include <string_view>

#include "icdoc/rdl/model.hpp"

namespace icdoc::rdl {

/// Parse the supported SystemRDL subset: a single addrmap of reg and field
/// definitions.
///
///   addrmap NAME { prop; ... reg { prop; ... field { prop; ... } F[msb:lsb]; } R @ 0xADDR; };
///
/// addrmap properties: name desc bigendian littleendian
/// reg properties:     name desc regwidth
/// field properties:   name desc sw hw reset update_rate
///
/// Boolean properties may be written `bigendian;` or `bigendian = true;`.
/// `first_line` is the line number of the first source line, so positions in
/// the model refer to the enclosing document. Throws ParseError.
RegisterMap parse_rdl(std::string_view source, std::size_t first_line = 1);

} // namespace icdoc::rdl
