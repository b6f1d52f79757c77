#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "icdoc/gates/gates.hpp"
#include "icdoc/pipeline/manifest.hpp"
#include "icdoc/rdl/codegen.hpp"

namespace icdoc::pipeline {

/// Process exit codes shared by all commands.
enum class ExitCode : int {
    success = 0,
    gate_failure = 1,
    syntax_error = 2,
    io_error = 3,
    drift = 4,
    tracker_rejection = 5,
};

struct BuildOptions {
    std::filesystem::path source;
    std::filesystem::path out_dir;
    rdl::Mode mode = rdl::Mode::draft;
    std::optional<std::filesystem::path> config;
    std::vector<std::filesystem::path> glossaries;
    std::optional<std::filesystem::path> history;
    std::optional<std::string> tracker;
    /// Source revision. Read from `.icdoc-revision` next to the source when unset.
    std::optional<std::string> src;
    std::optional<std::string> canonical;
};

struct BuildOutcome {
    ExitCode exit_code = ExitCode::success;
    std::optional<gates::GateReport> report;
    std::optional<Manifest> manifest;
    /// Files written, relative to the output directory.
    std::vector<std::string> outputs;
    /// Human-readable progress and error lines.
    std::vector<std::string> messages;
};

/// Build one ICD: parse, expand, gate, render, generate headers, digest,
/// write the manifest and, in publish mode with a tracker, record the
/// publication. Draft mode writes everything regardless of the verdict and
/// never contacts the tracker for mutations.
BuildOutcome build(const BuildOptions& options);

struct CheckOptions {
    /// Manifest file path or http:// URL.
    std::string manifest;
    std::filesystem::path local_dir;
    std::optional<std::string> tracker;
    std::string reporter = "icdoc-check";
};

struct CheckOutcome {
    ExitCode exit_code = ExitCode::success;
    std::vector<std::string> lines;
};

/// Compare local artifacts against a manifest's digests. Mismatches are
/// reported to the tracker when one is given.
CheckOutcome check(const CheckOptions& options);

struct GatesOptions {
    std::filesystem::path source;
    std::optional<std::filesystem::path> config;
    std::vector<std::filesystem::path> glossaries;
    std::optional<std::string> tracker;
};

struct GatesOutcome {
    ExitCode exit_code = ExitCode::success;
    std::string text;
};

/// Parse, expand and run the gates only; writes nothing.
GatesOutcome gates_dry_run(const GatesOptions& options);

} // namespace icdoc::pipeline
