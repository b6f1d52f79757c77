#include "icdoc/rdl/bits.hpp"

#include <stdexcept>

namespace icdoc::rdl {

std::uint64_t field_mask(const Field& field) {
    if (field.msb < field.lsb || field.msb > 63) throw std::invalid_argument("invalid field bit range");
    auto width = field.width();
    std::uint64_t ones = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    return ones << field.lsb;
}

std::uint64_t pack_field(std::uint64_t reg_value, const Field& field, std::uint64_t value) {
    auto mask = field_mask(field);
    if (field.width() < 64 && value >> field.width() != 0) {
        throw std::out_of_range("value " + std::to_string(value) + " does not fit field '" + field.name + "' of width " +
                                std::to_string(field.width()));
    }
    return (reg_value & ~mask) | ((value << field.lsb) & mask);
}

std::uint64_t extract_field(std::uint64_t reg_value, const Field& field) {
    return (reg_value & field_mask(field)) >> field.lsb;
}

} // namespace icdoc::rdl
