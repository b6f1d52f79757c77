#include "icdoc/tracker/service.hpp"

#include <chrono>
#include <ctime>
#include <mutex>

#include <httplib.h>

#include "icdoc/tracker/json.hpp"

namespace icdoc::tracker {

namespace {

Response json_response(int status, const Json& body) {
    return Response{status, body.dump(2) + "\n"};
}

Response error_response(int status, std::string_view code, const std::string& message) {
    return json_response(status, Json{{"error", code}, {"message", message}});
}

Response tracker_error(const TrackerError& e) {
    switch (e.code()) {
    case TrackerError::Code::unknown_document: return error_response(404, "unknown_document", e.what());
    case TrackerError::Code::conflict: return error_response(409, "conflict", e.what());
    case TrackerError::Code::non_increasing_version: return error_response(409, "non_increasing_version", e.what());
    case TrackerError::Code::invalid: return error_response(422, "invalid", e.what());
    case TrackerError::Code::dangling_ref: return error_response(422, "dangling_ref", e.what());
    case TrackerError::Code::cycle: return error_response(422, "cycle", e.what());
    }
    return error_response(500, "internal", e.what());
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= path.size()) {
        auto slash = path.find('/', start);
        if (slash == std::string::npos) slash = path.size();
        if (slash > start) parts.push_back(path.substr(start, slash - start));
        start = slash + 1;
    }
    return parts;
}

std::string string_field(const Json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) {
        throw TrackerError(TrackerError::Code::invalid, std::string("field '") + key + "' must be a string");
    }
    return it->get<std::string>();
}

Digest digest_field(const Json& body, const char* key) {
    auto text = string_field(body, key);
    auto d = Digest::parse(text);
    if (!d) throw TrackerError(TrackerError::Code::invalid, std::string("field '") + key + "' is not a sha256 digest");
    return *d;
}

} // namespace

std::string utc_now() {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

TrackerService::TrackerService(std::optional<std::filesystem::path> state_file, Clock clock)
    : state_file_(std::move(state_file)), clock_(std::move(clock)) {
    if (state_file_) {
        registry_ = load_state(*state_file_);
        registry_.recompute_statuses();
    }
}

Registry TrackerService::snapshot() const {
    std::shared_lock lock(mutex_);
    return registry_;
}

Response TrackerService::mutate(const std::function<Response(Registry&)>& op) {
    std::unique_lock lock(mutex_);
    Registry next = registry_;
    Response response = op(next);
    if (state_file_) {
        try {
            save_state(*state_file_, next);
        } catch (const std::exception& e) {
            return error_response(500, "persistence", e.what());
        }
    }
    registry_ = std::move(next);
    return response;
}

Response TrackerService::handle(const Request& request) {
    auto parts = split_path(request.path);
    if (parts.empty() || parts[0] != "documents" || parts.size() > 3) {
        return error_response(404, "not_found", "no such endpoint: " + request.path);
    }

    try {
        if (request.method == "GET") {
            std::shared_lock lock(mutex_);
            if (parts.size() == 1) {
                Json list = Json::array();
                for (const auto& r : registry_.list()) list.push_back(to_json(r));
                return json_response(200, list);
            }
            if (parts.size() == 2) {
                Json record = to_json(registry_.get(parts[1]));
                Json events = Json::array();
                for (const auto& e : registry_.events_for(parts[1])) events.push_back(to_json(e));
                record["events"] = events;
                return json_response(200, record);
            }
            return error_response(404, "not_found", "no such endpoint: " + request.path);
        }
        if (request.method != "POST") return error_response(405, "method_not_allowed", request.method + " not supported");

        Json body;
        try {
            body = Json::parse(request.body);
        } catch (const Json::parse_error& e) {
            return error_response(400, "bad_request", std::string("body is not valid JSON: ") + e.what());
        }
        if (!body.is_object()) return error_response(400, "bad_request", "body must be a JSON object");

        if (parts.size() == 1) {
            auto doc_id = string_field(body, "doc_id");
            return mutate([&](Registry& reg) { return json_response(201, to_json(reg.register_document(doc_id))); });
        }
        if (parts.size() != 3) return error_response(405, "method_not_allowed", "POST not supported on " + request.path);

        const auto& doc_id = parts[1];
        const auto& action = parts[2];
        if (action == "versions") {
            auto version = version_from_json(body);
            version.recorded_at = clock_();
            return mutate([&](Registry& reg) {
                Json changed = Json::array();
                for (const auto& c : reg.record_publication(doc_id, version)) changed.push_back(to_json(c));
                return json_response(201, Json{{"changed", changed}});
            });
        }
        if (action == "build-failures") {
            auto summary = string_field(body, "summary");
            return mutate(
                [&](Registry& reg) { return json_response(201, to_json(reg.record_build_failure(doc_id, summary))); });
        }
        if (action == "check-failures") {
            auto path = string_field(body, "path");
            auto expected = digest_field(body, "expected");
            auto actual = digest_field(body, "actual");
            auto reporter = body.contains("reporter") ? string_field(body, "reporter") : std::string();
            return mutate([&](Registry& reg) {
                return json_response(201, to_json(reg.report_check_failure(doc_id, path, expected, actual, reporter)));
            });
        }
        return error_response(404, "not_found", "no such endpoint: " + request.path);
    } catch (const TrackerError& e) {
        return tracker_error(e);
    }
}

struct HttpServer::Impl {
    explicit Impl(TrackerService& s) : service(s) {}
    TrackerService& service;
    httplib::Server server;
    std::mutex state;
    bool entered = false;
    bool stopped = false;
};

HttpServer::HttpServer(TrackerService& service) : impl_(std::make_unique<Impl>(service)) {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        auto out = impl_->service.handle(Request{req.method, req.path, req.body});
        res.status = out.status;
        res.set_content(out.body, "application/json");
    };
    impl_->server.Get(R"(/documents(/.*)?)", forward);
    impl_->server.Post(R"(/documents(/.*)?)", forward);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw std::runtime_error("cannot bind to " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() {
    {
        std::lock_guard lock(impl_->state);
        if (impl_->stopped) return;
        impl_->entered = true;
    }
    impl_->server.listen_after_bind();
}

void HttpServer::stop() {
    {
        std::lock_guard lock(impl_->state);
        impl_->stopped = true;
        if (!impl_->entered) return;
    }
    // httplib ignores stop() until its accept loop is running.
    impl_->server.wait_until_ready();
    impl_->server.stop();
}

} // namespace icdoc::tracker
