#include "icdoc/version.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

namespace icdoc {

namespace {

std::optional<std::uint64_t> parse_component(std::string_view part) {
    if (part.empty() || part.size() > 19) return std::nullopt;
    // Leading zeros would make "1.01" and "1.1" distinct strings for one version.
    if (part.size() > 1 && part.front() == '0') return std::nullopt;
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc{} || ptr != part.data() + part.size()) return std::nullopt;
    return value;
}

} // namespace

std::optional<Version> Version::parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto dot = text.find('.', start);
        parts.push_back(text.substr(start, dot == std::string_view::npos ? dot : dot - start));
        if (dot == std::string_view::npos) break;
        start = dot + 1;
    }
    if (parts.size() < 2 || parts.size() > 3) return std::nullopt;

    Version v;
    auto major = parse_component(parts[0]);
    auto minor = parse_component(parts[1]);
    if (!major || !minor) return std::nullopt;
    v.major = *major;
    v.minor = *minor;
    if (parts.size() == 3) {
        auto patch = parse_component(parts[2]);
        if (!patch) return std::nullopt;
        v.patch = *patch;
    }
    return v;
}

Version Version::from_string(std::string_view text) {
    if (auto v = parse(text)) return *v;
    throw std::invalid_argument("invalid version '" + std::string(text) + "'");
}

std::string Version::to_string() const {
    std::string out = std::to_string(major) + "." + std::to_string(minor);
    if (patch) out += "." + std::to_string(*patch);
    return out;
}

bool is_valid_doc_id(std::string_view id) noexcept {
    if (id.empty()) return false;
    auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(id.front())) return false;
    for (char c : id) {
        if (!alpha(c) && !digit(c) && c != '_' && c != '-') return false;
    }
    return true;
}

} // namespace icdoc
