#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/corpus.hpp"

namespace fragmine {

inline constexpr std::string_view kMasterRelease = "master";

struct ReleaseRef {
    std::string name;  // tag name or "master"
    std::string commit_id;
    std::size_t order_index = 0;
    std::int64_t timestamp = 0;  // committer date, UTC seconds

    bool operator==(const ReleaseRef&) const = default;
};

using PathPredicate = std::function<bool(std::string_view)>;

/// Which files count as project code. Matches by file extension.
class ProjectScope {
public:
    ProjectScope() : extensions_{".java"} {}
    explicit ProjectScope(std::vector<std::string> extensions) : extensions_(std::move(extensions)) {}

    bool operator()(std::string_view path) const;
    const std::vector<std::string>& extensions() const noexcept { return extensions_; }

private:
    std::vector<std::string> extensions_;
};

/// Immutable path -> content view of a commit.
class FileTree {
public:
    using Map = std::map<std::string, std::string, std::less<>>;

    FileTree() = default;
    explicit FileTree(Map files) : files_(std::move(files)) {}

    const std::string* find(std::string_view path) const {
        auto it = files_.find(path);
        return it == files_.end() ? nullptr : &it->second;
    }
    std::size_t size() const noexcept { return files_.size(); }
    bool empty() const noexcept { return files_.empty(); }
    Map::const_iterator begin() const { return files_.begin(); }
    Map::const_iterator end() const { return files_.end(); }

private:
    Map files_;
};

enum class FileStatus { added, deleted, modified };

std::string_view to_string(FileStatus s) noexcept;

struct FileDiff {
    std::string path;
    std::uint64_t lines_added = 0;
    std::uint64_t lines_deleted = 0;
    FileStatus status = FileStatus::modified;

    std::uint64_t churn() const noexcept { return lines_added + lines_deleted; }
};

struct PairDiff {
    ReleaseRef from;
    ReleaseRef to;
    std::vector<FileDiff> file_diffs;  // sorted by path
    std::uint64_t project_churn = 0;   // Pdiff: churn summed over project-scope files
};

// Tags ordered by committer date of their target commit (ties by name),
// then a synthetic "master" release for the default-branch head unless the
// head is the last tag's commit.
std::vector<ReleaseRef> list_releases(const RepoRef& repo);

// Every blob path of the commit's tree.
std::vector<std::string> list_paths(const RepoRef& repo, std::string_view commit);

// Reads the committed tree from the object store. `include`, when set,
// limits which paths are loaded.
FileTree snapshot(const RepoRef& repo, const ReleaseRef& release, const PathPredicate& include = {});

// Line-level churn between two commits with rename detection off, so a
// rename is one deletion plus one addition. Binary files are skipped, the
// way `git diff --numstat` reports them as "-".
PairDiff diff_pair(const RepoRef& repo, const ReleaseRef& from, const ReleaseRef& to,
                   const PathPredicate& project_scope);

// Same churn rules as diff_pair, over two trees already in memory.
PairDiff diff_trees(const ReleaseRef& from, const ReleaseRef& to, const FileTree& before, const FileTree& after,
                    const PathPredicate& project_scope);

}  // namespace fragmine
