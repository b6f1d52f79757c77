#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace icdoc {

/// Document version `major.minor[.patch]`.
///
/// An absent patch orders like 0 but is preserved for display, so `1.1` and
/// `1.1.0` compare equal while printing differently.
struct Version {
    std::uint64_t major = 0;
    std::uint64_t minor = 0;
    std::optional<std::uint64_t> patch;

    static std::optional<Version> parse(std::string_view text);
    /// Like parse() but throws std::invalid_argument.
    static Version from_string(std::string_view text);

    std::string to_string() const;

    friend std::weak_ordering operator<=>(const Version& a, const Version& b) noexcept {
        if (auto c = a.major <=> b.major; c != 0) return c;
        if (auto c = a.minor <=> b.minor; c != 0) return c;
        return a.patch.value_or(0) <=> b.patch.value_or(0);
    }
    friend bool operator==(const Version& a, const Version& b) noexcept {
        return (a <=> b) == 0;
    }
};

/// True when `id` is a valid document identifier (`[A-Za-z][A-Za-z0-9_-]*`).
bool is_valid_doc_id(std::string_view id) noexcept;

} // namespace icdoc
