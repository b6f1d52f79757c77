#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "icdoc/tracker/json.hpp"

namespace icdoc::tracker {

/// The tracker could not be reached or answered with something unexpected.
class TrackerUnavailable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ClientResponse {
    int status = 0;
    Json body;
};

/// Minimal HTTP client for the tracker API. `base_url` is
/// `http://host:port[/prefix]`.
class TrackerClient {
public:
    explicit TrackerClient(const std::string& base_url);
    ~TrackerClient();
    TrackerClient(TrackerClient&&) noexcept;
    TrackerClient& operator=(TrackerClient&&) noexcept;

    ClientResponse register_document(const std::string& doc_id);
    ClientResponse publish(const std::string& doc_id, const VersionRecord& version);
    ClientResponse report_build_failure(const std::string& doc_id, const std::string& summary);
    ClientResponse report_check_failure(const std::string& doc_id, const std::string& path, const Digest& expected,
                                        const Digest& actual, const std::string& reporter);
    ClientResponse list();
    /// Null when the document is unknown.
    std::optional<Json> get(const std::string& doc_id);

private:
    ClientResponse post(const std::string& path, const Json& body);
    ClientResponse get_path(const std::string& path);

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Fetch a resource over plain HTTP. Throws TrackerUnavailable on failure or a
/// non-200 answer.
std::string http_get(const std::string& url);

} // namespace icdoc::tracker
