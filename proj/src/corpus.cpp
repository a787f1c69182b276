#include "fragmine/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <json.hpp>

#include "fragmine/error.hpp"
#include "fragmine/git.hpp"
#include "fragmine/history.hpp"

namespace fs = std::filesystem;

namespace fragmine {
namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::map<std::string, std::string> read_key_values(const fs::path& file) {
    std::ifstream in(file);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

}  // namespace

const fs::path& RepoRef::path() const {
    if (!local_path) throw Error(Errc::repo_unreadable, host_id + " has not been fetched");
    return *local_path;
}

std::string_view to_string(Rejection r) noexcept {
    switch (r) {
        case Rejection::none: return "none";
        case Rejection::no_manifest: return "no-manifest";
        case Rejection::too_few_releases: return "too-few-releases";
    }
    return "none";
}

std::vector<RepoRef> FixtureIndexBackend::search(std::string_view query, int /*page_limit*/) {
    std::error_code ec;
    if (!fs::is_directory(dir_, ec)) throw Error(Errc::api_unreachable, "fixture index " + dir_.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    const std::string needle = lower(query);
    std::vector<RepoRef> hits;
    for (const auto& file : files) {
        auto kv = read_key_values(file);
        if (!kv.contains("id") || !kv.contains("clone_url")) {
            throw Error(Errc::malformed_response, file.string() + " lacks id or clone_url");
        }
        const std::string haystack = lower(kv["id"] + "\n" + kv["description"]);
        if (haystack.find(needle) == std::string::npos) continue;
        std::string url = kv["clone_url"];
        if (url.find("://") == std::string::npos && fs::path(url).is_relative()) {
            url = fs::weakly_canonical(dir_ / url).string();
        }
        hits.push_back({kv["id"], url, std::nullopt});
    }
    return hits;
}

std::vector<RepoRef> HostingApiBackend::search(std::string_view query, int page_limit) {
    httplib::Client client(options_.base_url);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);
    httplib::Headers headers = {{"Accept", "application/vnd.github+json"}, {"User-Agent", "fragmine"}};
    if (!options_.token.empty()) headers.emplace("Authorization", "Bearer " + options_.token);

    std::vector<RepoRef> hits;
    for (int page = 1; page <= page_limit; ++page) {
        httplib::Params params = {{"q", std::string(query)},
                                  {"per_page", std::to_string(options_.per_page)},
                                  {"page", std::to_string(page)}};
        auto res = client.Get("/search/repositories", params, headers);
        if (!res) throw Error(Errc::api_unreachable, httplib::to_string(res.error()));
        if (res->status == 429 || (res->status == 403 && res->get_header_value("x-ratelimit-remaining") == "0")) {
            throw Error(Errc::rate_limited, "retry after " + res->get_header_value("retry-after"));
        }
        if (res->status == 422) throw Error(Errc::invalid_query, res->body);
        if (res->status != 200) throw Error(Errc::api_unreachable, "HTTP " + std::to_string(res->status));

        auto body = nlohmann::json::parse(res->body, nullptr, false);
        if (body.is_discarded() || !body.contains("items") || !body["items"].is_array()) {
            throw Error(Errc::malformed_response, "search response without items");
        }
        for (const auto& item : body["items"]) {
            if (!item.contains("full_name") || !item["full_name"].is_string() || !item.contains("clone_url") ||
                !item["clone_url"].is_string()) {
                throw Error(Errc::malformed_response, "search item without full_name/clone_url");
            }
            hits.push_back({item["full_name"].get<std::string>(), item["clone_url"].get<std::string>(), std::nullopt});
        }
        if (body["items"].size() < static_cast<std::size_t>(options_.per_page)) break;
    }
    return hits;
}

std::vector<RepoRef> discover(DiscoveryBackend& backend, std::string_view query, int page_limit) {
    if (query.empty()) throw Error(Errc::invalid_query, "empty query");
    std::vector<RepoRef> hits = backend.search(query, page_limit);
    std::stable_sort(hits.begin(), hits.end(), [](const RepoRef& a, const RepoRef& b) { return a.host_id < b.host_id; });
    hits.erase(std::unique(hits.begin(), hits.end(),
                           [](const RepoRef& a, const RepoRef& b) { return a.host_id == b.host_id; }),
               hits.end());
    return hits;
}

std::string cache_key(std::string_view host_id) {
    std::string key;
    for (std::size_t i = 0; i < host_id.size(); ++i) {
        if (host_id[i] == '/') {
            key += "__";
        } else {
            key += host_id[i];
        }
    }
    return key;
}

RepoRef fetch(const RepoRef& repo, const fs::path& cache_dir) {
    const fs::path dest = cache_dir / cache_key(repo.host_id);
    RepoRef out = repo;
    if (GitRepository(dest).is_valid()) {
        out.local_path = dest;
        return out;
    }

    std::error_code ec;
    fs::create_directories(cache_dir, ec);
    if (ec || ::access(cache_dir.c_str(), W_OK) != 0) {
        throw Error(Errc::cache_dir_unwritable, cache_dir.string());
    }
    // Clone beside the final location, then rename, so a half-finished clone
    // never looks cached.
    const fs::path staging = cache_dir / (cache_key(repo.host_id) + ".partial-" + std::to_string(::getpid()));
    fs::remove_all(staging, ec);
    auto r = run_process({"git", "clone", "--bare", "--quiet", repo.clone_url, staging.string()});
    if (r.exit_code != 0) {
        fs::remove_all(staging, ec);
        throw Error(Errc::clone_failed, repo.clone_url + ": " + r.err);
    }
    fs::remove_all(dest, ec);
    fs::rename(staging, dest, ec);
    if (ec) throw Error(Errc::cache_dir_unwritable, dest.string() + ": " + ec.message());
    out.local_path = dest;
    return out;
}

bool has_manifest(const RepoRef& repo) {
    GitRepository git(repo.path());
    auto head = git.run({"rev-parse", "--verify", "-q", "HEAD^{commit}"});
    if (head.exit_code != 0) return false;
    head.out.erase(head.out.find_last_not_of("\r\n") + 1);
    for (const auto& p : list_paths(repo, head.out)) {
        if (p == "AndroidManifest.xml" || p.ends_with("/AndroidManifest.xml")) return true;
    }
    return false;
}

FilterResult passes_filter(const RepoRef& repo, const CorpusFilter& filter) {
    if (!GitRepository(repo.path()).is_valid()) throw Error(Errc::repo_unreadable, repo.path().string());
    FilterResult result;
    if (filter.require_manifest && !has_manifest(repo)) {
        result.reason = Rejection::no_manifest;
        return result;
    }
    try {
        result.releases = list_releases(repo).size();
    } catch (const Error& e) {
        if (e.code() != Errc::no_releases) throw;
    }
    if (result.releases < filter.min_releases) {
        result.reason = Rejection::too_few_releases;
        return result;
    }
    result.passed = true;
    return result;
}

}  // namespace fragmine
