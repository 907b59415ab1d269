#include "issuecast/replay_server.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "issuecast/error.hpp"

namespace issuecast::ingest {
namespace {

struct CannedResponse {
    int status = 200;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;
};

bool is_response_spec(const nlohmann::json& j) {
    return j.is_object() && (j.contains("status") || j.contains("body")) && !j.contains("id");
}

CannedResponse to_canned(const nlohmann::json& j) {
    CannedResponse r;
    if (j.is_string()) {
        r.body = j.get<std::string>();
        return r;
    }
    if (!is_response_spec(j)) {
        r.body = j.dump();
        return r;
    }
    r.status = j.value("status", 200);
    if (j.contains("headers")) {
        for (const auto& [k, v] : j["headers"].items()) {
            r.headers.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
        }
    }
    if (j.contains("body")) r.body = j["body"].is_string() ? j["body"].get<std::string>() : j["body"].dump();
    return r;
}

}  // namespace

struct ReplayServer::Impl {
    std::map<std::string, std::vector<CannedResponse>> routes;
    std::map<std::string, std::size_t> served;
    std::vector<std::string> log;
    std::string last_auth;
    mutable std::mutex mutex;
    httplib::Server server;
    std::thread thread;
    int port = -1;
};

std::string ReplayServer::canonical_route(const std::string& path_and_query) {
    const auto q = path_and_query.find('?');
    const std::string path = httplib::detail::decode_url(path_and_query.substr(0, q), false);
    if (q == std::string::npos || q + 1 == path_and_query.size()) return path;
    std::vector<std::string> params;
    std::stringstream ss(path_and_query.substr(q + 1));
    std::string part;
    while (std::getline(ss, part, '&')) {
        if (!part.empty()) params.push_back(httplib::detail::decode_url(part, true));
    }
    std::sort(params.begin(), params.end());
    std::string out = path + "?";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += '&';
        out += params[i];
    }
    return out;
}

ReplayServer::ReplayServer(const std::string& fixture_json) : impl_(std::make_unique<Impl>()) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(fixture_json);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::FormatError, std::string("replay fixture is not JSON: ") + e.what());
    }
    if (!doc.contains("routes") || !doc["routes"].is_object()) {
        throw Error(Errc::FormatError, "replay fixture needs a \"routes\" object");
    }
    for (const auto& [route, entry] : doc["routes"].items()) {
        auto& seq = impl_->routes[canonical_route(route)];
        const bool sequence = entry.is_array() && !entry.empty() &&
                              std::all_of(entry.begin(), entry.end(), [](const auto& e) { return is_response_spec(e); });
        if (sequence) {
            for (const auto& e : entry) seq.push_back(to_canned(e));
        } else {
            seq.push_back(to_canned(entry));
        }
    }
}

ReplayServer ReplayServer::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::IoError, "cannot read replay fixture " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ReplayServer(ss.str());
}

ReplayServer::~ReplayServer() {
    if (impl_) stop();
}

ReplayServer::ReplayServer(ReplayServer&&) noexcept = default;
ReplayServer& ReplayServer::operator=(ReplayServer&&) noexcept = default;

void ReplayServer::start() {
    auto* impl = impl_.get();
    impl->server.Get(".*", [impl](const httplib::Request& req, httplib::Response& res) {
        const auto route = canonical_route(req.target);
        std::lock_guard lock(impl->mutex);
        impl->log.push_back(route);
        impl->last_auth = req.get_header_value("Authorization");
        const auto it = impl->routes.find(route);
        if (it == impl->routes.end()) {
            res.status = 404;
            res.set_content(R"({"message":"Not Found"})", "application/json");
            return;
        }
        auto& count = impl->served[route];
        const auto& canned = it->second[std::min(count, it->second.size() - 1)];
        ++count;
        res.status = canned.status;
        for (const auto& [k, v] : canned.headers) res.set_header(k, v);
        res.set_content(canned.body, "application/json");
    });
    impl->port = impl->server.bind_to_any_port("127.0.0.1");
    if (impl->port < 0) {
        throw Error(Errc::NetworkError, "replay server could not bind a local port");
    }
    impl->thread = std::thread([impl] { impl->server.listen_after_bind(); });
    impl->server.wait_until_ready();
}

void ReplayServer::stop() {
    if (impl_->thread.joinable()) {
        impl_->server.stop();
        impl_->thread.join();
    }
}

std::string ReplayServer::base_url() const {
    return "http://127.0.0.1:" + std::to_string(impl_->port);
}

std::vector<std::string> ReplayServer::request_log() const {
    std::lock_guard lock(impl_->mutex);
    return impl_->log;
}

std::string ReplayServer::last_authorization() const {
    std::lock_guard lock(impl_->mutex);
    return impl_->last_auth;
}

}  // namespace issuecast::ingest
