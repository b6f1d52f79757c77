#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace icdoc {

/// Syntax error in an ICD source or an embedded register description.
///
/// Kept distinct from quality-gate violations: a ParseError means the input
/// could not be understood at all, a violation means it was understood and
/// found lacking.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::string message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line), message_(std::move(message)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::string message_;
};

/// Malformed configuration, glossary, history, or manifest input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace icdoc
