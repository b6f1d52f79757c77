#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace icdoc {

/// SHA-256 content digest as 64 lowercase hex characters.
class Digest {
public:
    static constexpr std::string_view algorithm() noexcept { return "sha256"; }

    /// Accepts bare hex or the `sha256:<hex>` form.
    static std::optional<Digest> parse(std::string_view text);

    const std::string& hex() const noexcept { return hex_; }
    /// `sha256:<hex>`
    std::string qualified() const { return std::string(algorithm()) + ":" + hex_; }

    friend bool operator==(const Digest&, const Digest&) = default;
    friend auto operator<=>(const Digest&, const Digest&) = default;

private:
    explicit Digest(std::string hex) : hex_(std::move(hex)) {}
    friend Digest digest(std::span<const std::byte>);

    std::string hex_;
};

Digest digest(std::span<const std::byte> bytes);
Digest digest(std::string_view bytes);

/// Digest of a file's exact contents. Throws std::runtime_error if unreadable.
Digest digest_file(const std::string& path);

} // namespace icdoc
