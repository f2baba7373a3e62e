#include "bibforge/net.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace bibforge::net {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw BibError("IoError", "cannot read fixture file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// FixtureHttpClient

struct FixtureHttpClient::Entry {
    std::string path;
    Params params;
    std::string body_file;
    int status = 200;
};

FixtureHttpClient::~FixtureHttpClient() = default;

FixtureHttpClient::FixtureHttpClient(std::string dir) : dir_(std::move(dir)) {
    std::filesystem::path index_path = std::filesystem::path(dir_) / "index.json";
    nlohmann::json index;
    try {
        index = nlohmann::json::parse(read_file(index_path));
    } catch (const nlohmann::json::exception& e) {
        throw BibError("ParseError",
                       "bad fixture index '" + index_path.string() + "': " + e.what());
    }
    for (const auto& item : index) {
        Entry entry;
        entry.path = item.at("path").get<std::string>();
        if (item.contains("params"))
            for (const auto& [k, v] : item.at("params").items())
                entry.params.emplace_back(k, v.get<std::string>());
        entry.body_file = item.at("body_file").get<std::string>();
        entry.status = item.value("status", 200);
        index_.push_back(std::move(entry));
    }
}

HttpResponse FixtureHttpClient::get(const std::string& /*host*/,
                                    const std::string& path, const Params& params) {
    for (const Entry& entry : index_) {
        if (entry.path != path) continue;
        bool all = true;
        for (const auto& [k, v] : entry.params) {
            bool found = false;
            for (const auto& [rk, rv] : params)
                if (rk == k && rv == v) {
                    found = true;
                    break;
                }
            if (!found) {
                all = false;
                break;
            }
        }
        if (!all) continue;
        HttpResponse resp;
        resp.status = entry.status;
        resp.body = read_file(std::filesystem::path(dir_) / entry.body_file);
        return resp;
    }
    std::string desc = path;
    for (const auto& [k, v] : params) desc += " " + k + "=" + v;
    throw BibError("HttpError", "no fixture matches request: " + desc);
}

// ---------------------------------------------------------------------------
// LiveHttpClient

namespace {

// Minimum spacing between requests per host; NCBI terms allow 3/sec.
std::chrono::milliseconds host_spacing(const std::string& host) {
    if (host.find("ncbi") != std::string::npos) return std::chrono::milliseconds(334);
    return std::chrono::milliseconds(50);
}

void rate_limit(const std::string& host) {
    static std::mutex mutex;
    static std::map<std::string, std::chrono::steady_clock::time_point> last;
    std::chrono::steady_clock::time_point wait_until;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto now = std::chrono::steady_clock::now();
        auto it = last.find(host);
        wait_until = it == last.end() ? now : it->second + host_spacing(host);
        if (wait_until < now) wait_until = now;
        last[host] = wait_until;
    }
    std::this_thread::sleep_until(wait_until);
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else if (c == ' ') {
            out.push_back('+');
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

}  // namespace

LiveHttpClient::LiveHttpClient(int timeout_ms, int retries)
    : timeout_ms_(timeout_ms), retries_(retries) {}

HttpResponse LiveHttpClient::get(const std::string& host, const std::string& path,
                                 const Params& params) {
    std::string target = path;
    char sep = '?';
    for (const auto& [k, v] : params) {
        target += sep + url_encode(k) + "=" + url_encode(v);
        sep = '&';
    }

    std::string last_error;
    for (int attempt = 0; attempt <= retries_; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(250 << attempt));
        rate_limit(host);
        httplib::Client client(host);
        client.set_connection_timeout(0, timeout_ms_ * 1000);
        client.set_read_timeout(0, timeout_ms_ * 1000);
        client.set_follow_location(true);
        httplib::Result result = client.Get(target);
        if (!result) {
            last_error = httplib::to_string(result.error());
            continue;
        }
        if (result->status >= 500) {
            last_error = "server status " + std::to_string(result->status);
            continue;
        }
        HttpResponse resp;
        resp.status = result->status;
        resp.body = result->body;
        return resp;
    }
    throw BibError("HttpError", "request to " + host + path + " failed after " +
                                    std::to_string(retries_ + 1) +
                                    " attempts: " + last_error);
}

std::unique_ptr<HttpClient> default_client() {
    if (const char* dir = std::getenv("BIBFORGE_HTTP_FIXTURES"); dir && *dir)
        return std::make_unique<FixtureHttpClient>(dir);
    return std::make_unique<LiveHttpClient>();
}

}  // namespace bibforge::net
