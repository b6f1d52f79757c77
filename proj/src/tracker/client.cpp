#include "icdoc/tracker/client.hpp"

#include <httplib.h>

namespace icdoc::tracker {

namespace {

struct Endpoint {
    std::string origin;
    std::string prefix;
};

Endpoint parse_url(const std::string& url) {
    constexpr std::string_view scheme = "http://";
    if (url.rfind(scheme, 0) != 0) throw TrackerUnavailable("only http:// URLs are supported: '" + url + "'");
    auto slash = url.find('/', scheme.size());
    Endpoint e;
    e.origin = url.substr(0, slash);
    if (slash != std::string::npos) e.prefix = url.substr(slash);
    while (!e.prefix.empty() && e.prefix.back() == '/') e.prefix.pop_back();
    if (e.origin.size() == scheme.size()) throw TrackerUnavailable("missing host in '" + url + "'");
    return e;
}

ClientResponse decode(const httplib::Result& res, const std::string& what) {
    if (!res) throw TrackerUnavailable(what + ": " + httplib::to_string(res.error()));
    ClientResponse out;
    out.status = res->status;
    if (!res->body.empty()) {
        try {
            out.body = Json::parse(res->body);
        } catch (const Json::parse_error&) {
            throw TrackerUnavailable(what + ": response is not JSON");
        }
    }
    return out;
}

} // namespace

struct TrackerClient::Impl {
    Impl(const Endpoint& e) : client(e.origin), prefix(e.prefix) {
        client.set_connection_timeout(5);
        client.set_read_timeout(30);
    }
    httplib::Client client;
    std::string prefix;
};

TrackerClient::TrackerClient(const std::string& base_url) : impl_(std::make_unique<Impl>(parse_url(base_url))) {}
TrackerClient::~TrackerClient() = default;
TrackerClient::TrackerClient(TrackerClient&&) noexcept = default;
TrackerClient& TrackerClient::operator=(TrackerClient&&) noexcept = default;

ClientResponse TrackerClient::post(const std::string& path, const Json& body) {
    auto full = impl_->prefix + path;
    return decode(impl_->client.Post(full, body.dump(), "application/json"), "POST " + full);
}

ClientResponse TrackerClient::get_path(const std::string& path) {
    auto full = impl_->prefix + path;
    return decode(impl_->client.Get(full), "GET " + full);
}

ClientResponse TrackerClient::register_document(const std::string& doc_id) {
    return post("/documents", Json{{"doc_id", doc_id}});
}

ClientResponse TrackerClient::publish(const std::string& doc_id, const VersionRecord& version) {
    auto body = to_json(version);
    body.erase("recorded_at");
    return post("/documents/" + doc_id + "/versions", body);
}

ClientResponse TrackerClient::report_build_failure(const std::string& doc_id, const std::string& summary) {
    return post("/documents/" + doc_id + "/build-failures", Json{{"summary", summary}});
}

ClientResponse TrackerClient::report_check_failure(const std::string& doc_id, const std::string& path,
                                                   const Digest& expected, const Digest& actual,
                                                   const std::string& reporter) {
    return post("/documents/" + doc_id + "/check-failures",
                Json{{"path", path}, {"expected", expected.hex()}, {"actual", actual.hex()}, {"reporter", reporter}});
}

ClientResponse TrackerClient::list() { return get_path("/documents"); }

std::optional<Json> TrackerClient::get(const std::string& doc_id) {
    auto res = get_path("/documents/" + doc_id);
    if (res.status == 404) return std::nullopt;
    if (res.status != 200) throw TrackerUnavailable("GET /documents/" + doc_id + ": status " + std::to_string(res.status));
    return res.body;
}

std::string http_get(const std::string& url) {
    auto e = parse_url(url);
    httplib::Client client(e.origin);
    client.set_connection_timeout(5);
    auto path = e.prefix.empty() ? "/" : e.prefix;
    auto res = client.Get(path);
    if (!res) throw TrackerUnavailable("GET " + url + ": " + httplib::to_string(res.error()));
    if (res->status != 200) throw TrackerUnavailable("GET " + url + ": status " + std::to_string(res->status));
    return res->body;
}

} // namespace icdoc::tracker
