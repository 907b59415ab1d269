#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace issuecast::ingest {

/// Serves canned responses for offline tests of the API client.
///
/// Fixture format: `{"routes": {"<path>?<query>": <entry>}}` where an entry is
/// either a body served with status 200 (strings verbatim, other JSON serialized), an object
/// `{"status": int, "headers": {...}, "body": <json>}`, or an array of such
/// objects served in order on repeated requests (the last one repeats).
/// Query parameters are matched irrespective of their order. Unknown routes
/// answer 404.
class ReplayServer {
public:
    explicit ReplayServer(const std::string& fixture_json);
    static ReplayServer from_file(const std::filesystem::path& path);
    ~ReplayServer();

    ReplayServer(ReplayServer&&) noexcept;
    ReplayServer& operator=(ReplayServer&&) noexcept;
    ReplayServer(const ReplayServer&) = delete;
    ReplayServer& operator=(const ReplayServer&) = delete;

    /// Binds 127.0.0.1 on an ephemeral port and serves on a background thread.
    void start();
    void stop();

    /// `http://127.0.0.1:<port>`; valid after start().
    [[nodiscard]] std::string base_url() const;
    /// Canonicalized `path?query` of every request received, in arrival order.
    [[nodiscard]] std::vector<std::string> request_log() const;
    /// Authorization header of the most recent request ("" if none).
    [[nodiscard]] std::string last_authorization() const;

    /// Sorts the query parameters of `path?query`.
    static std::string canonical_route(const std::string& path_and_query);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace issuecast::ingest
