#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "issuecast/dates.hpp"
#include "issuecast/filter.hpp"
#include "issuecast/ingest.hpp"

namespace issuecast::ingest {

/// Environment variable consulted for the API token when none is passed explicitly.
inline constexpr const char* kTokenEnvVar = "GITHUB_TOKEN";

std::string token_from_environment();

struct ClientConfig {
    std::string base_url = "https://api.github.com";
    std::string token;
    int per_page = 100;
    int max_retries = 5;
    std::chrono::milliseconds base_backoff{1000};
    std::chrono::milliseconds max_wait{std::chrono::minutes{15}};
    std::chrono::seconds timeout{30};
    /// Replaceable for tests; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::milliseconds)> sleep;
};

/// Client for the repository-hosting REST API's issue listing and the count
/// endpoints the filter needs. All requests to one host go through a shared
/// governor, so concurrent clients never race each other into a rate limit.
class GitHubClient {
public:
    explicit GitHubClient(ClientConfig config);

    /// All issues (open and closed) of `repo` ("owner/name"), following
    /// pagination to the end. Pull requests are kept with is_pull_request set.
    /// With `since`, records created before that date are excluded.
    std::vector<IssueRecord> fetch_issues(const std::string& repo, std::optional<Date> since = std::nullopt,
                                          const LabelPatterns& patterns = {});

    /// Commit, contributor and release counts plus the issue/PR counts and
    /// duration derived from `issues` and `duration_weeks`.
    filter::ProjectMeta fetch_meta(const std::string& repo, const std::vector<IssueRecord>& issues,
                                   std::int64_t duration_weeks, bool is_software_dev = true);

    /// Number of HTTP requests issued so far, retries included.
    [[nodiscard]] std::size_t request_count() const noexcept { return requests_; }

private:
    struct Response {
        int status = 0;
        std::string body;
        std::string link;
        std::optional<long long> retry_after;
        std::optional<long long> ratelimit_reset;
        std::optional<long long> ratelimit_remaining;
    };

    Response get(const std::string& repo, const std::string& path_and_query);
    std::int64_t count_items(const std::string& repo, const std::string& path);

    ClientConfig config_;
    std::size_t requests_ = 0;
};

/// Convenience wrapper: empty `token` falls back to the environment variable.
std::vector<IssueRecord> fetch_issues(const std::string& repo, const std::string& token,
                                      std::optional<Date> since = std::nullopt, ClientConfig config = {});

/// Parses one issue object of the REST listing.
IssueRecord parse_issue(const std::string& json_object_text, const LabelPatterns& patterns = {});

/// Extracts the URL tagged rel="<rel>" from a Link header, if present.
std::optional<std::string> link_target(const std::string& link_header, const std::string& rel);

}  // namespace issuecast::ingest
