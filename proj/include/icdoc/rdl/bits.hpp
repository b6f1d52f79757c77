#pragma once

#include <cstdint>

#include "icdoc/rdl/model.hpp"

namespace icdoc::rdl {

/// Mask covering bits [msb:lsb]. Requires msb >= lsb and msb < 64.
std::uint64_t field_mask(const Field& field);

/// `reg_value` with bits [msb:lsb] replaced by `value`.
/// Throws std::out_of_range when `value` does not fit the field.
std::uint64_t pack_field(std::uint64_t reg_value, const Field& field, std::uint64_t value);

std::uint64_t extract_field(std::uint64_t reg_value, const Field& field);

} // namespace icdoc::rdl
