#include "issuecast/github_client.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "issuecast/error.hpp"

namespace issuecast::ingest {
namespace {

using Clock = std::chrono::system_clock;

// One per host: serializes requests and remembers when a rate limit lifts.
struct Governor {
    std::mutex mutex;
    Clock::time_point resume_at{};
};

std::shared_ptr<Governor> governor_for(const std::string& host) {
    static std::mutex registry_mutex;
    static std::map<std::string, std::shared_ptr<Governor>> registry;
    std::lock_guard lock(registry_mutex);
    auto& slot = registry[host];
    if (!slot) slot = std::make_shared<Governor>();
    return slot;
}

std::optional<long long> header_number(const httplib::Result& res, const char* name) {
    if (!res->has_header(name)) return std::nullopt;
    const auto value = res->get_header_value(name);
    char* end = nullptr;
    const long long n = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str()) return std::nullopt;
    return n;
}

std::string strip_origin(const std::string& url) {
    const auto scheme = url.find("://");
    if (scheme == std::string::npos) return url;
    const auto slash = url.find('/', scheme + 3);
    return slash == std::string::npos ? "/" : url.substr(slash);
}

std::optional<long long> query_param(const std::string& url, const std::string& key) {
    const auto q = url.find('?');
    if (q == std::string::npos) return std::nullopt;
    std::size_t pos = q + 1;
    while (pos < url.size()) {
        auto amp = url.find('&', pos);
        if (amp == std::string::npos) amp = url.size();
        const auto part = url.substr(pos, amp - pos);
        if (part.rfind(key + "=", 0) == 0) {
            return std::strtoll(part.c_str() + key.size() + 1, nullptr, 10);
        }
        pos = amp + 1;
    }
    return std::nullopt;
}

}  // namespace

std::string token_from_environment() {
    const char* value = std::getenv(kTokenEnvVar);
    return value ? std::string(value) : std::string();
}

std::optional<std::string> link_target(const std::string& link_header, const std::string& rel) {
    // <url>; rel="next", <url>; rel="last"
    std::size_t pos = 0;
    while (pos < link_header.size()) {
        const auto open = link_header.find('<', pos);
        if (open == std::string::npos) break;
        const auto close = link_header.find('>', open);
        if (close == std::string::npos) break;
        auto end = link_header.find(',', close);
        if (end == std::string::npos) end = link_header.size();
        const auto params = link_header.substr(close + 1, end - close - 1);
        if (params.find("rel=\"" + rel + "\"") != std::string::npos) {
            return link_header.substr(open + 1, close - open - 1);
        }
        pos = end + 1;
    }
    return std::nullopt;
}

IssueRecord parse_issue(const std::string& json_object_text, const LabelPatterns& patterns) {
    try {
        const auto doc = nlohmann::json::parse(json_object_text);
        IssueRecord r;
        r.id = doc.at("id").get<std::int64_t>();
        r.created_at = parse_timestamp(doc.at("created_at").get<std::string>());
        if (doc.contains("labels") && doc["labels"].is_array()) {
            for (const auto& label : doc["labels"]) {
                if (label.is_string()) {
                    r.labels.push_back(label.get<std::string>());
                } else if (label.is_object() && label.contains("name") && label["name"].is_string()) {
                    r.labels.push_back(label["name"].get<std::string>());
                }
            }
        }
        r.is_pull_request = doc.contains("pull_request") && !doc["pull_request"].is_null();
        r.kind = classify(r, patterns);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, std::string("malformed issue object: ") + e.what());
    }
}

GitHubClient::GitHubClient(ClientConfig config) : config_(std::move(config)) {
    if (!config_.sleep) {
        config_.sleep = [](std::chrono::milliseconds ms) { std::this_thread::sleep_for(ms); };
    }
    if (config_.per_page < 1 || config_.per_page > 100) {
        throw Error(Errc::InvalidArgument, "per_page must be in 1..100");
    }
}

GitHubClient::Response GitHubClient::get(const std::string& repo, const std::string& path_and_query) {
    auto governor = governor_for(config_.base_url);
    std::lock_guard lock(governor->mutex);

    httplib::Client client(config_.base_url);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_follow_location(true);
    httplib::Headers headers{{"Accept", "application/vnd.github+json"}, {"User-Agent", "issuecast"}};
    if (!config_.token.empty()) headers.emplace("Authorization", "Bearer " + config_.token);

    for (int attempt = 0;; ++attempt) {
        const auto now = Clock::now();
        if (governor->resume_at > now) {
            config_.sleep(std::chrono::duration_cast<std::chrono::milliseconds>(governor->resume_at - now));
        }
        const auto backoff = config_.base_backoff * (1LL << std::min(attempt, 20));
        const bool out_of_retries = attempt >= config_.max_retries;

        ++requests_;
        auto res = client.Get(path_and_query, headers);
        if (!res) {
            if (out_of_retries) {
                throw Error(Errc::NetworkError, repo + ": " + httplib::to_string(res.error()));
            }
            config_.sleep(std::min(std::chrono::duration_cast<std::chrono::milliseconds>(backoff), config_.max_wait));
            continue;
        }

        Response out;
        out.status = res->status;
        out.body = res->body;
        out.link = res->get_header_value("Link");
        out.retry_after = header_number(res, "Retry-After");
        out.ratelimit_reset = header_number(res, "X-RateLimit-Reset");
        out.ratelimit_remaining = header_number(res, "X-RateLimit-Remaining");

        if (out.status >= 200 && out.status < 300) return out;
        if (out.status == 401) throw Error(Errc::AuthError, repo + ": credentials rejected (401)");
        if (out.status == 404) throw Error(Errc::NotFound, repo + ": not found (404)");

        const bool rate_limited = out.status == 429 ||
                                  (out.status == 403 && (out.retry_after || out.ratelimit_remaining == 0));
        if (out.status == 403 && !rate_limited) {
            throw Error(Errc::AuthError, repo + ": access forbidden (403)");
        }
        if (rate_limited) {
            if (out_of_retries) {
                throw Error(Errc::RateLimited, repo + ": still rate limited after " +
                                                   std::to_string(config_.max_retries) + " retries");
            }
            auto wait = std::chrono::duration_cast<std::chrono::milliseconds>(backoff);
            if (out.retry_after) {
                wait = std::max(wait, std::chrono::milliseconds{*out.retry_after * 1000});
            } else if (out.ratelimit_reset) {
                const auto reset = Clock::time_point{std::chrono::seconds{*out.ratelimit_reset}};
                if (reset > Clock::now()) {
                    wait = std::max(wait, std::chrono::duration_cast<std::chrono::milliseconds>(reset - Clock::now()));
                }
            }
            wait = std::min(wait, config_.max_wait);
            governor->resume_at = Clock::now() + wait;
            continue;
        }
        if (out.status >= 500 && !out_of_retries) {
            config_.sleep(std::min(std::chrono::duration_cast<std::chrono::milliseconds>(backoff), config_.max_wait));
            continue;
        }
        throw Error(Errc::NetworkError, repo + ": unexpected HTTP status " + std::to_string(out.status));
    }
}

std::vector<IssueRecord> GitHubClient::fetch_issues(const std::string& repo, std::optional<Date> since,
                                                    const LabelPatterns& patterns) {
    std::string next = "/repos/" + repo + "/issues?state=all&per_page=" + std::to_string(config_.per_page) + "&page=1";
    if (since) next += "&since=" + format_date(*since) + "T00:00:00Z";

    std::vector<IssueRecord> out;
    while (!next.empty()) {
        const auto res = get(repo, next);
        nlohmann::json page;
        try {
            page = nlohmann::json::parse(res.body);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::FormatError, repo + ": issue page is not JSON: " + e.what());
        }
        if (!page.is_array()) {
            throw Error(Errc::FormatError, repo + ": issue page is not a JSON array");
        }
        for (const auto& item : page) {
            auto record = parse_issue(item.dump(), patterns);
            if (since && record.created_at < Timestamp{*since}) continue;
            out.push_back(std::move(record));
        }
        if (!res.link.empty()) {
            const auto link = link_target(res.link, "next");
            next = link ? strip_origin(*link) : std::string();
        } else if (page.size() == static_cast<std::size_t>(config_.per_page)) {
            const auto current = query_param(next, "page").value_or(1);
            next = "/repos/" + repo + "/issues?state=all&per_page=" + std::to_string(config_.per_page) +
                   "&page=" + std::to_string(current + 1);
            if (since) next += "&since=" + format_date(*since) + "T00:00:00Z";
        } else {
            next.clear();
        }
    }
    return out;
}

std::int64_t GitHubClient::count_items(const std::string& repo, const std::string& path) {
    const auto res = get(repo, path + (path.find('?') == std::string::npos ? "?" : "&") + "per_page=1");
    if (const auto last = link_target(res.link, "last")) {
        if (const auto page = query_param(*last, "page")) return *page;
    }
    try {
        const auto body = nlohmann::json::parse(res.body);
        return body.is_array() ? static_cast<std::int64_t>(body.size()) : 0;
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, repo + ": count response is not JSON: " + e.what());
    }
}

filter::ProjectMeta GitHubClient::fetch_meta(const std::string& repo, const std::vector<IssueRecord>& issues,
                                             std::int64_t duration_weeks, bool is_software_dev) {
    filter::ProjectMeta meta;
    for (const auto& r : issues) {
        if (r.is_pull_request) {
            ++meta.pull_request_count;
        } else {
            ++meta.issue_count;
        }
    }
    meta.duration_weeks = duration_weeks;
    meta.is_software_dev = is_software_dev;
    meta.commit_count = count_items(repo, "/repos/" + repo + "/commits");
    meta.contributor_count = count_items(repo, "/repos/" + repo + "/contributors?anon=1");
    meta.release_count = count_items(repo, "/repos/" + repo + "/releases");
    return meta;
}

std::vector<IssueRecord> fetch_issues(const std::string& repo, const std::string& token, std::optional<Date> since,
                                      ClientConfig config) {
    config.token = token.empty() ? token_from_environment() : token;
    GitHubClient client(std::move(config));
    return client.fetch_issues(repo, since);
}

}  // namespace issuecast::ingest
