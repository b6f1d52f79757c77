#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/gates/config.hpp"
#include "icdoc/markup/ast.hpp"
#include "icdoc/markup/glossary.hpp"
#include "icdoc/rdl/model.hpp"

namespace icdoc::gates {

struct Violation {
    std::string rule_id;
    Severity severity = Severity::error;
    /// Source line; 0 for findings about the document as a whole.
    std::size_t line = 0;
    std::string context;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

enum class Verdict { pass, fail };

struct GateReport {
    std::vector<Violation> violations;
    std::size_t errors = 0;
    std::size_t warnings = 0;
    Verdict verdict = Verdict::pass;

    /// Orders violations by line and derives counts and verdict: fail iff any
    /// error or more than `max_warnings` warnings.
    static GateReport from(std::vector<Violation> violations, std::size_t max_warnings);

    bool passed() const noexcept { return verdict == Verdict::pass; }

    friend bool operator==(const GateReport&, const GateReport&) = default;
};

/// Answers whether a local link target exists.
using LinkResolver = std::function<bool(std::string_view target)>;

/// Evaluate every gate over an expanded document and its register maps.
/// Throws ConfigError only when `config` is invalid.
GateReport run_gates(const markup::Document& doc, std::span<const rdl::RegisterMap> maps,
                     const markup::Glossary& glossary, const GateConfig& config, const LinkResolver& link_resolver);

/// Split on '.', '!' or '?' followed by whitespace or end of text. Does not
/// know about abbreviations such as "e.g.".
std::vector<std::string> segment_sentences(std::string_view text);

/// One `<severity> <rule> line <n>: <message>` line per violation, then
/// `PASS|FAIL (<n> errors, <m> warnings)`.
std::string report_to_text(const GateReport& report);

std::string report_to_json(const GateReport& report);

} // namespace icdoc::gates
