#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace icdoc::rdl {

enum class Endianness { unspecified, big, little };

enum class Access { r, w, rw, na };

std::string_view to_string(Access access) noexcept;

struct Field {
    std::string name;
    unsigned msb = 0;
    unsigned lsb = 0;
    std::optional<std::string> display_name;
    std::optional<Access> sw;
    std::optional<Access> hw;
    std::optional<std::uint64_t> reset;
    std::optional<std::string> desc;
    std::optional<std::string> update_rate;
    std::size_t line = 0;

    unsigned width() const noexcept { return msb - lsb + 1; }

    friend bool operator==(const Field&, const Field&) = default;
};

struct Register {
    std::string name;
    std::optional<std::string> display_name;
    std::optional<std::string> desc;
    unsigned regwidth = 32;
    std::uint64_t offset = 0;
    std::vector<Field> fields;
    std::size_t line = 0;

    std::uint64_t byte_size() const noexcept { return regwidth / 8; }

    friend bool operator==(const Register&, const Register&) = default;
};

struct RegisterMap {
    std::string name;
    std::optional<std::string> display_name;
    std::optional<std::string> desc;
    Endianness endianness = Endianness::unspecified;
    std::vector<Register> registers;
    std::size_t line = 0;

    friend bool operator==(const RegisterMap&, const RegisterMap&) = default;
};

} // namespace icdoc::rdl
