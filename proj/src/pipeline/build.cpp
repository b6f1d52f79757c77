#include "icdoc/pipeline/build.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>

#include "icdoc/digest.hpp"
#include "icdoc/errors.hpp"
#include "icdoc/markup/parse.hpp"
#include "icdoc/markup/scan.hpp"
#include "icdoc/pipeline/compile.hpp"
#include "icdoc/tracker/client.hpp"

namespace icdoc::pipeline {

namespace fs = std::filesystem;

namespace {

/// Reading or writing a file failed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return text;
}

void write_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::string first_line(std::string_view text) {
    auto nl = text.find_first_of("\r\n");
    auto line = text.substr(0, nl);
    auto b = line.find_first_not_of(" \t");
    if (b == std::string_view::npos) return "";
    auto e = line.find_last_not_of(" \t");
    return std::string(line.substr(b, e - b + 1));
}

/// Offline link check: the target, minus any fragment or query, exists
/// relative to the source file's directory.
gates::LinkResolver file_resolver(const fs::path& base) {
    return [base](std::string_view target) {
        auto cut = target.find_first_of("#?");
        auto path = target.substr(0, cut);
        if (path.empty()) return true;
        std::error_code ec;
        return fs::exists(base / fs::path(std::string(path)), ec);
    };
}

/// Everything read from disk before compiling.
struct LoadedInputs {
    CompileInputs compile;
    fs::path source_dir;
};

LoadedInputs load_inputs(const fs::path& source, const std::optional<fs::path>& config,
                         const std::vector<fs::path>& glossaries, const std::optional<fs::path>& history) {
    LoadedInputs in;
    in.compile.source = read_file(source);
    in.compile.config = config ? gates::parse_config(read_file(*config)) : gates::GateConfig{};
    for (const auto& g : glossaries) in.compile.glossaries.push_back(GlossarySource{g.string(), read_file(g)});
    if (history) in.compile.history = markup::parse_history(read_file(*history));
    in.source_dir = source.has_parent_path() ? source.parent_path() : fs::path(".");
    in.compile.link_resolver = file_resolver(in.source_dir);
    return in;
}

/// Look up canonical locations of referenced versions in the tracker.
markup::ReferenceTable resolve_refs(tracker::TrackerClient& client, const std::vector<markup::RefKey>& keys) {
    markup::ReferenceTable table;
    std::map<std::string, std::optional<tracker::Json>> cache;
    for (const auto& key : keys) {
        auto it = cache.find(key.doc_id);
        if (it == cache.end()) it = cache.emplace(key.doc_id, client.get(key.doc_id)).first;
        if (!it->second) continue;
        for (const auto& v : it->second->at("versions")) {
            auto version = Version::parse(v.at("version").get<std::string>());
            if (version && *version == key.version) table.emplace(key, v.at("build_location").get<std::string>());
        }
    }
    return table;
}

std::string error_body(const tracker::ClientResponse& res) {
    if (res.body.is_object() && res.body.contains("message")) return res.body["message"].get<std::string>();
    return "status " + std::to_string(res.status);
}

} // namespace

BuildOutcome build(const BuildOptions& options) {
    BuildOutcome outcome;
    auto fail = [&](ExitCode code, std::string message) {
        outcome.exit_code = code;
        outcome.messages.push_back(std::move(message));
        return outcome;
    };
    const bool publish = options.mode == rdl::Mode::publish;

    LoadedInputs in;
    try {
        in = load_inputs(options.source, options.config, options.glossaries, options.history);
    } catch (const IoError& e) {
        return fail(ExitCode::io_error, std::string("error: ") + e.what());
    } catch (const ConfigError& e) {
        return fail(ExitCode::io_error, std::string("config error: ") + e.what());
    }

    std::string src;
    if (options.src) {
        src = *options.src;
    } else if (auto rev = in.source_dir / ".icdoc-revision"; fs::exists(rev)) {
        try {
            src = first_line(read_file(rev));
        } catch (const IoError& e) {
            return fail(ExitCode::io_error, std::string("error: ") + e.what());
        }
    }

    std::optional<tracker::TrackerClient> client;
    try {
        if (options.tracker) client.emplace(*options.tracker);
        if (client) {
            auto keys = markup::icd_refs(markup::parse_document(in.compile.source));
            in.compile.refs = resolve_refs(*client, keys);
        }
    } catch (const ParseError& e) {
        return fail(ExitCode::syntax_error,
                    "syntax error: " + options.source.string() + ":" + std::to_string(e.line()) + ": " + e.message());
    } catch (const tracker::TrackerUnavailable& e) {
        if (publish) return fail(ExitCode::tracker_rejection, std::string("tracker error: ") + e.what());
        outcome.messages.push_back(std::string("warning: references left unresolved: ") + e.what());
        client.reset();
    }

    Compiled compiled;
    try {
        compiled = compile(in.compile);
    } catch (const ParseError& e) {
        return fail(ExitCode::syntax_error,
                    "syntax error: " + options.source.string() + ":" + std::to_string(e.line()) + ": " + e.message());
    } catch (const ConfigError& e) {
        return fail(ExitCode::io_error, std::string("config error: ") + e.what());
    }
    outcome.report = compiled.report;
    const auto& doc = compiled.document;

    auto written = [&](const std::string& name, std::string_view contents) {
        write_file(options.out_dir / name, contents);
        outcome.outputs.push_back(name);
    };

    try {
        fs::create_directories(options.out_dir);
        written("gate-report.txt", gates::report_to_text(compiled.report));
        written("gate-report.json", gates::report_to_json(compiled.report));
    } catch (const std::exception& e) {
        return fail(ExitCode::io_error, std::string("error: ") + e.what());
    }

    if (publish && !compiled.report.passed()) {
        return fail(ExitCode::gate_failure, "quality gates failed; " + doc.doc_id() + " " +
                                                doc.version().to_string() + " not published");
    }

    std::vector<GeneratedFile> files;
    try {
        files = generate_artifacts(compiled, options.mode, in.compile.config.required_field_props);
    } catch (const rdl::ValidationError& e) {
        for (const auto& v : e.violations()) {
            outcome.messages.push_back(v.rule_id + " line " + std::to_string(v.line) + ": " + v.message);
        }
        return fail(ExitCode::gate_failure, std::string("error: ") + e.what());
    }
    std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.path < b.path; });

    Manifest manifest;
    manifest.doc_id = doc.doc_id();
    manifest.version = doc.version();
    manifest.src = src;
    for (const auto& key : markup::icd_refs(doc)) manifest.refs.push_back(tracker::Pin{key.doc_id, key.version});
    manifest.build_location = options.canonical;

    try {
        for (const auto& f : files) {
            written(f.path, f.contents);
            manifest.artifacts.push_back(tracker::Artifact{f.path, digest(std::string_view(f.contents))});
        }
        written("manifest.json", manifest_to_json(manifest));
    } catch (const std::exception& e) {
        if (publish && client) {
            try {
                client->report_build_failure(manifest.doc_id, std::string("could not write outputs: ") + e.what());
            } catch (const std::exception&) {
                // Already failing on I/O; the tracker report is best effort.
            }
        }
        return fail(ExitCode::io_error, std::string("error: ") + e.what());
    }
    outcome.manifest = manifest;

    if (publish && client) {
        try {
            auto reg = client->register_document(manifest.doc_id);
            if (reg.status != 201 && reg.status != 409) {
                return fail(ExitCode::tracker_rejection, "tracker rejected registration: " + error_body(reg));
            }
            // Without a canonical URL the output directory stands in for it.
            auto location = manifest.build_location.value_or("file://" + fs::absolute(options.out_dir).lexically_normal().generic_string());
            tracker::VersionRecord record{manifest.version, manifest.src, manifest.refs, location, manifest.artifacts, ""};
            auto res = client->publish(manifest.doc_id, record);
            if (res.status != 201) return fail(ExitCode::tracker_rejection, "tracker rejected publication: " + error_body(res));
            outcome.messages.push_back("published " + manifest.doc_id + " " + manifest.version.to_string());
            for (const auto& c : res.body.value("changed", tracker::Json::array())) {
                outcome.messages.push_back("status " + c.value("doc_id", "") + ": " + c.value("from", "") + " -> " +
                                           c.value("to", ""));
            }
        } catch (const tracker::TrackerUnavailable& e) {
            return fail(ExitCode::tracker_rejection, std::string("tracker error: ") + e.what());
        }
    }
    return outcome;
}

CheckOutcome check(const CheckOptions& options) {
    CheckOutcome outcome;
    auto fail = [&](std::string message) {
        outcome.exit_code = ExitCode::io_error;
        outcome.lines.push_back(std::move(message));
        return outcome;
    };

    Manifest manifest;
    try {
        std::string text = options.manifest.rfind("http://", 0) == 0 ? tracker::http_get(options.manifest)
                                                                     : read_file(options.manifest);
        manifest = parse_manifest(text);
    } catch (const std::exception& e) {
        return fail(std::string("error: ") + e.what());
    }
    std::error_code ec;
    if (!fs::is_directory(options.local_dir, ec)) return fail("error: '" + options.local_dir.string() + "' is not a directory");

    struct Drift {
        std::string path;
        Digest expected;
        Digest actual;
    };
    std::vector<Drift> drifted;
    bool missing = false;
    for (const auto& artifact : manifest.artifacts) {
        fs::path rel(artifact.path);
        bool escapes = rel.is_absolute() || std::any_of(rel.begin(), rel.end(), [](const fs::path& p) { return p == ".."; });
        if (escapes) return fail("error: artifact path '" + artifact.path + "' leaves the local directory");

        auto local = options.local_dir / rel;
        if (!fs::is_regular_file(local, ec)) {
            outcome.lines.push_back("missing " + artifact.path);
            missing = true;
            continue;
        }
        Digest actual = digest(std::string_view(""));
        try {
            actual = digest_file(local.string());
        } catch (const std::exception& e) {
            return fail(std::string("error: ") + e.what());
        }
        if (actual == artifact.sha256) {
            outcome.lines.push_back("ok " + artifact.path);
        } else {
            outcome.lines.push_back("drift " + artifact.path + ": expected " + artifact.sha256.qualified() + ", found " +
                                    actual.qualified());
            drifted.push_back(Drift{artifact.path, artifact.sha256, actual});
        }
    }

    if (options.tracker) {
        try {
            tracker::TrackerClient client(*options.tracker);
            for (const auto& d : drifted) {
                auto res = client.report_check_failure(manifest.doc_id, d.path, d.expected, d.actual, options.reporter);
                if (res.status != 201) outcome.lines.push_back("warning: tracker did not record drift of " + d.path + ": " + error_body(res));
            }
            if (auto record = client.get(manifest.doc_id)) {
                auto latest = record->value("latest_version", tracker::Json());
                if (latest.is_string()) {
                    auto v = Version::parse(latest.get<std::string>());
                    if (v && manifest.version < *v) {
                        outcome.lines.push_back("warning: " + manifest.doc_id + " " + v->to_string() +
                                                " is newer than the checked version " + manifest.version.to_string());
                    }
                }
            }
        } catch (const std::exception& e) {
            outcome.lines.push_back(std::string("warning: tracker error: ") + e.what());
        }
    }

    outcome.exit_code = drifted.empty() && !missing ? ExitCode::success : ExitCode::drift;
    return outcome;
}

GatesOutcome gates_dry_run(const GatesOptions& options) {
    GatesOutcome outcome;
    LoadedInputs in;
    try {
        in = load_inputs(options.source, options.config, options.glossaries, std::nullopt);
        if (options.tracker) {
            tracker::TrackerClient client(*options.tracker);
            in.compile.refs = resolve_refs(client, markup::icd_refs(markup::parse_document(in.compile.source)));
        }
        auto compiled = compile(in.compile);
        outcome.text = gates::report_to_text(compiled.report);
        outcome.exit_code = compiled.report.passed() ? ExitCode::success : ExitCode::gate_failure;
    } catch (const ParseError& e) {
        outcome.exit_code = ExitCode::syntax_error;
        outcome.text = "syntax error: " + options.source.string() + ":" + std::to_string(e.line()) + ": " + e.message() + "\n";
    } catch (const ConfigError& e) {
        outcome.exit_code = ExitCode::io_error;
        outcome.text = std::string("config error: ") + e.what() + "\n";
    } catch (const std::exception& e) {
        outcome.exit_code = ExitCode::io_error;
        outcome.text = std::string("error: ") + e.what() + "\n";
    }
    return outcome;
}

} // namespace icdoc::pipeline
