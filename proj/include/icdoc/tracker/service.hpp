#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>

#include "icdoc/tracker/registry.hpp"

namespace icdoc::tracker {

struct Request {
    std::string method;
    std::string path;
    std::string body;
};

struct Response {
    int status = 200;
    std::string body;
};

/// Current UTC time as `YYYY-MM-DDTHH:MM:SSZ`.
std::string utc_now();

/// Tracker HTTP+JSON API over a Registry.
///
///   POST /documents                          {doc_id}
///   POST /documents/{id}/versions            {version, src, refs, build_location, artifacts}
///   POST /documents/{id}/build-failures      {summary}
///   POST /documents/{id}/check-failures      {path, expected, actual, reporter}
///   GET  /documents
///   GET  /documents/{id}
///
/// Mutations run one at a time; each is applied to a copy of the registry,
/// persisted, and only then made visible. Reads run concurrently.
class TrackerService {
public:
    using Clock = std::function<std::string()>;

    /// Loads `state_file` when it exists. Without a state file nothing is persisted.
    explicit TrackerService(std::optional<std::filesystem::path> state_file = std::nullopt, Clock clock = utc_now);

    Response handle(const Request& request);

    Registry snapshot() const;

private:
    Response mutate(const std::function<Response(Registry&)>& op);

    std::optional<std::filesystem::path> state_file_;
    Clock clock_;
    mutable std::shared_mutex mutex_;
    Registry registry_;
};

/// HTTP front end for a TrackerService.
class HttpServer {
public:
    explicit HttpServer(TrackerService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Bind to host:port (port 0 picks a free port). Returns the bound port.
    /// Throws std::runtime_error when binding fails.
    int bind(const std::string& host, int port);

    /// Serve until stop() is called.
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace icdoc::tracker
