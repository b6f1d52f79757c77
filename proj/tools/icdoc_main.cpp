#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <pthread.h>

#include <CLI11.hpp>

#include "icdoc/pipeline/build.hpp"
#include "icdoc/tracker/service.hpp"

namespace fs = std::filesystem;
using icdoc::pipeline::ExitCode;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

template <class T>
std::optional<T> opt(const std::string& value) {
    if (value.empty()) return std::nullopt;
    return T(value);
}

std::vector<fs::path> paths(const std::vector<std::string>& values) { return {values.begin(), values.end()}; }

int run_serve(const std::string& state, const std::string& listen) {
    auto colon = listen.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "error: --listen expects HOST:PORT\n";
        return code(ExitCode::io_error);
    }
    std::string host = listen.substr(0, colon);
    int port = 0;
    try {
        std::size_t used = 0;
        port = std::stoi(listen.substr(colon + 1), &used);
        if (used != listen.size() - colon - 1 || port < 0 || port > 65535) throw std::out_of_range("port");
    } catch (const std::exception&) {
        std::cerr << "error: invalid port in '" << listen << "'\n";
        return code(ExitCode::io_error);
    }

    // Block the stop signals so the server thread never sees them; the main
    // thread waits for them below.
    sigset_t stop_signals;
    sigemptyset(&stop_signals);
    sigaddset(&stop_signals, SIGINT);
    sigaddset(&stop_signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

    std::optional<icdoc::tracker::TrackerService> service;
    std::optional<icdoc::tracker::HttpServer> server;
    int bound = 0;
    try {
        service.emplace(fs::path(state));
        server.emplace(*service);
        bound = server->bind(host, port);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return code(ExitCode::io_error);
    }
    std::cout << "icdoc tracker listening on http://" << host << ":" << bound << std::endl;

    std::thread worker([&] { server->listen(); });
    int sig = 0;
    sigwait(&stop_signals, &sig);
    server->stop();
    worker.join();
    std::cout << "icdoc tracker stopped" << std::endl;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interface control documents as code"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "icdoc 0.1.0");

    std::string source, out_dir, mode = "draft", config, history, tracker_url, src, canonical;
    std::vector<std::string> glossaries;
    bool src_given = false;

    auto* build = app.add_subcommand("build", "Build an ICD into HTML, headers and a manifest");
    build->add_option("file", source, "ICD source file")->required();
    build->add_option("--out", out_dir, "Output directory")->required();
    build->add_option("--mode", mode, "draft or publish")->check(CLI::IsMember({"draft", "publish"}));
    build->add_option("--config", config, "Gate configuration (JSON)");
    build->add_option("--glossary", glossaries, "Glossary file; the first is central, later ones local");
    build->add_option("--history", history, "Document history file");
    build->add_option("--tracker", tracker_url, "Tracker base URL");
    auto* src_opt = build->add_option("--src", src, "Source revision recorded in the manifest");
    build->add_option("--canonical", canonical, "Canonical location of the published build");

    std::string manifest, local_dir, reporter = "icdoc-check";
    auto* check = app.add_subcommand("check", "Compare local artifacts against a manifest");
    check->add_option("--manifest", manifest, "Manifest path or http:// URL")->required();
    check->add_option("--local", local_dir, "Directory holding the local copies")->required();
    check->add_option("--tracker", tracker_url, "Tracker base URL");
    check->add_option("--reporter", reporter, "Name recorded with drift reports");

    std::string state, listen;
    auto* serve = app.add_subcommand("serve", "Run the document tracker");
    serve->add_option("--state", state, "State file")->required();
    serve->add_option("--listen", listen, "HOST:PORT")->required();

    auto* gates = app.add_subcommand("gates", "Run the quality gates without writing anything");
    gates->add_option("file", source, "ICD source file")->required();
    gates->add_option("--config", config, "Gate configuration (JSON)");
    gates->add_option("--glossary", glossaries, "Glossary file; the first is central, later ones local");
    gates->add_option("--tracker", tracker_url, "Tracker base URL");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : code(ExitCode::io_error);
    }
    src_given = src_opt->count() > 0;

    if (build->parsed()) {
        icdoc::pipeline::BuildOptions options;
        options.source = source;
        options.out_dir = out_dir;
        options.mode = mode == "publish" ? icdoc::rdl::Mode::publish : icdoc::rdl::Mode::draft;
        options.config = opt<fs::path>(config);
        options.glossaries = paths(glossaries);
        options.history = opt<fs::path>(history);
        options.tracker = opt<std::string>(tracker_url);
        if (src_given) options.src = src;
        options.canonical = opt<std::string>(canonical);

        auto outcome = icdoc::pipeline::build(options);
        if (outcome.report) std::cout << icdoc::gates::report_to_text(*outcome.report);
        for (const auto& m : outcome.messages) std::cerr << m << "\n";
        if (outcome.exit_code == ExitCode::success) {
            for (const auto& f : outcome.outputs) std::cout << "wrote " << (fs::path(out_dir) / f).string() << "\n";
        }
        return code(outcome.exit_code);
    }
    if (check->parsed()) {
        icdoc::pipeline::CheckOptions options;
        options.manifest = manifest;
        options.local_dir = local_dir;
        options.tracker = opt<std::string>(tracker_url);
        options.reporter = reporter;
        auto outcome = icdoc::pipeline::check(options);
        for (const auto& line : outcome.lines) {
            bool diagnostic = line.rfind("error:", 0) == 0 || line.rfind("warning:", 0) == 0;
            (diagnostic ? std::cerr : std::cout) << line << "\n";
        }
        return code(outcome.exit_code);
    }
    if (serve->parsed()) return run_serve(state, listen);

    icdoc::pipeline::GatesOptions options;
    options.source = source;
    options.config = opt<fs::path>(config);
    options.glossaries = paths(glossaries);
    options.tracker = opt<std::string>(tracker_url);
    auto outcome = icdoc::pipeline::gates_dry_run(options);
    (outcome.exit_code == ExitCode::success || outcome.exit_code == ExitCode::gate_failure ? std::cout : std::cerr)
        << outcome.text;
    return code(outcome.exit_code);
}
