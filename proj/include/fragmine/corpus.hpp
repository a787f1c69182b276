#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fragmine {

struct RepoRef {
    std::string host_id;    // "owner/name", unique within a corpus
    std::string clone_url;  // URL or local path
    std::optional<std::filesystem::path> local_path;

    const std::filesystem::path& path() const;  // throws repo_unreadable before fetch
};

struct CorpusFilter {
    bool require_manifest = true;
    std::size_t min_releases = 2;  // tags plus the synthetic master release
};

enum class Rejection { none, no_manifest, too_few_releases };

std::string_view to_string(Rejection r) noexcept;

struct FilterResult {
    bool passed = false;
    Rejection reason = Rejection::none;
    std::size_t releases = 0;
};

class DiscoveryBackend {
public:
    virtual ~DiscoveryBackend() = default;
    // One backend call per page; implementations return raw, unsorted hits.
    virtual std::vector<RepoRef> search(std::string_view query, int page_limit) = 0;
};

/// Offline index: one file per repository with `id=`, `description=` and
/// `clone_url=` lines. Relative clone URLs resolve against the index dir.
class FixtureIndexBackend final : public DiscoveryBackend {
public:
    explicit FixtureIndexBackend(std::filesystem::path dir) : dir_(std::move(dir)) {}
    std::vector<RepoRef> search(std::string_view query, int page_limit) override;

private:
    std::filesystem::path dir_;
};

/// Repository search over a GitHub-compatible REST endpoint
/// (`GET /search/repositories?q=...&per_page=...&page=...`).
class HostingApiBackend final : public DiscoveryBackend {
public:
    struct Options {
        std::string base_url = "https://api.github.com";
        std::string token;  // empty means anonymous
        int per_page = 100;
    };
    explicit HostingApiBackend(Options options) : options_(std::move(options)) {}
    std::vector<RepoRef> search(std::string_view query, int page_limit) override;

private:
    Options options_;
};

// Validated, deduplicated by host_id and sorted by host_id.
std::vector<RepoRef> discover(DiscoveryBackend& backend, std::string_view query, int page_limit);

// Directory name of a repository inside the clone cache.
std::string cache_key(std::string_view host_id);

// Full (non-shallow) bare clone into <cache_dir>/<cache_key>; an existing
// valid clone is reused as is.
RepoRef fetch(const RepoRef& repo, const std::filesystem::path& cache_dir);

// True when some path of the default-branch tree ends in AndroidManifest.xml.
bool has_manifest(const RepoRef& repo);

FilterResult passes_filter(const RepoRef& repo, const CorpusFilter& filter);

}  // namespace fragmine
