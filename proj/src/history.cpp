#include "fragmine/history.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "fragmine/error.hpp"
#include "fragmine/git.hpp"
#include "fragmine/line_diff.hpp"

namespace fragmine {
namespace {

struct TreeEntry {
    std::string object_id;
};

using TreeListing = std::map<std::string, TreeEntry, std::less<>>;

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            if (start < s.size()) parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

void require_commit(const GitRepository& git, std::string_view commit) {
    if (commit.empty() || commit.front() == '-' ||
        git.run({"cat-file", "-e", std::string(commit) + "^{commit}"}).exit_code != 0) {
        throw Error(Errc::unknown_commit, std::string(commit) + " in " + git.dir().string());
    }
}

// Blob entries only; submodule links (type "commit") carry no content.
TreeListing ls_tree(const GitRepository& git, std::string_view commit) {
    require_commit(git, commit);
    std::string out = git.output({"ls-tree", "-r", "-z", "--full-tree", std::string(commit)}, Errc::unknown_commit);
    TreeListing listing;
    for (std::string_view record : split(out, '\0')) {
        std::size_t tab = record.find('\t');
        if (tab == std::string_view::npos) continue;
        auto meta = split(record.substr(0, tab), ' ');
        if (meta.size() != 3 || meta[1] != "blob") continue;
        listing.emplace(std::string(record.substr(tab + 1)), TreeEntry{std::string(meta[2])});
    }
    return listing;
}

// Loads blob contents in one `git cat-file --batch` round trip.
std::unordered_map<std::string, std::string> read_blobs(const GitRepository& git, const std::set<std::string>& ids) {
    std::unordered_map<std::string, std::string> blobs;
    if (ids.empty()) return blobs;
    std::string request;
    for (const auto& id : ids) request += id + "\n";
    std::string out = git.output({"cat-file", "--batch"}, Errc::repo_unreadable, request);

    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t eol = out.find('\n', pos);
        if (eol == std::string::npos) break;
        auto header = split(std::string_view(out).substr(pos, eol - pos), ' ');
        pos = eol + 1;
        if (header.size() != 3) continue;  // "<id> missing"
        std::size_t size = 0;
        std::from_chars(header[2].data(), header[2].data() + header[2].size(), size);
        blobs.emplace(std::string(header[0]), out.substr(pos, size));
        pos += size + 1;
    }
    return blobs;
}

std::int64_t to_int(std::string_view s) {
    std::int64_t v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

}  // namespace

bool ProjectScope::operator()(std::string_view path) const {
    return std::any_of(extensions_.begin(), extensions_.end(),
                       [&](const std::string& ext) { return path.ends_with(ext); });
}

std::string_view to_string(FileStatus s) noexcept {
    switch (s) {
        case FileStatus::added: return "added";
        case FileStatus::deleted: return "deleted";
        case FileStatus::modified: return "modified";
    }
    return "modified";
}

std::vector<ReleaseRef> list_releases(const RepoRef& repo) {
    GitRepository git(repo.path());
    if (!git.is_valid()) throw Error(Errc::repo_unreadable, repo.path().string());

    std::string refs = git.output({"for-each-ref", "--format=%(refname:strip=2)%00%(objecttype)%00%(objectname)"
                                                   "%00%(*objecttype)%00%(*objectname)",
                                   "refs/tags"},
                                  Errc::repo_unreadable);
    struct Tag {
        std::string name, commit;
        std::int64_t time = 0;
    };
    std::vector<Tag> tags;
    for (std::string_view line : split(refs, '\n')) {
        auto f = split(line, '\0');
        if (f.size() < 3) continue;
        Tag tag{std::string(f[0]), {}, 0};
        if (f[1] == "commit") {
            tag.commit = std::string(f[2]);
        } else if (f.size() >= 5 && f[3] == "commit") {
            tag.commit = std::string(f[4]);
        } else {
            // Nested annotated tags; tags of trees or blobs are not releases.
            auto r = git.run({"rev-parse", "--verify", "-q", tag.name + "^{commit}"});
            if (r.exit_code != 0) continue;
            tag.commit = trim(r.out);
        }
        tags.push_back(std::move(tag));
    }

    auto head = git.run({"rev-parse", "--verify", "-q", "HEAD^{commit}"});
    std::string head_commit = head.exit_code == 0 ? trim(head.out) : std::string();
    if (tags.empty() && head_commit.empty()) throw Error(Errc::no_releases, repo.host_id);

    std::set<std::string> commits;
    for (const auto& t : tags) commits.insert(t.commit);
    if (!head_commit.empty()) commits.insert(head_commit);
    std::string request;
    for (const auto& c : commits) request += c + "\n";
    std::string log = git.output({"log", "--no-walk=unsorted", "--stdin", "--format=%H %ct"}, Errc::repo_unreadable,
                                 request);
    std::unordered_map<std::string, std::int64_t> times;
    for (std::string_view line : split(log, '\n')) {
        auto f = split(line, ' ');
        if (f.size() == 2) times[std::string(f[0])] = to_int(f[1]);
    }
    for (auto& t : tags) t.time = times[t.commit];

    std::sort(tags.begin(), tags.end(),
              [](const Tag& a, const Tag& b) { return std::tie(a.time, a.name) < std::tie(b.time, b.name); });

    std::vector<ReleaseRef> releases;
    for (auto& t : tags) {
        releases.push_back({std::move(t.name), std::move(t.commit), releases.size(), t.time});
    }
    if (!head_commit.empty() && (releases.empty() || releases.back().commit_id != head_commit)) {
        releases.push_back({std::string(kMasterRelease), head_commit, releases.size(), times[head_commit]});
    }
    return releases;
}

std::vector<std::string> list_paths(const RepoRef& repo, std::string_view commit) {
    GitRepository git(repo.path());
    std::vector<std::string> paths;
    for (auto& [path, entry] : ls_tree(git, commit)) paths.push_back(path);
    return paths;
}

FileTree snapshot(const RepoRef& repo, const ReleaseRef& release, const PathPredicate& include) {
    GitRepository git(repo.path());
    TreeListing listing = ls_tree(git, release.commit_id);
    std::set<std::string> ids;
    for (const auto& [path, entry] : listing) {
        if (!include || include(path)) ids.insert(entry.object_id);
    }
    auto blobs = read_blobs(git, ids);
    FileTree::Map files;
    for (const auto& [path, entry] : listing) {
        if (include && !include(path)) continue;
        files.emplace(path, blobs.at(entry.object_id));
    }
    return FileTree(std::move(files));
}

namespace {

void add_file_diff(PairDiff& diff, const std::string& path, const std::string* old_text,
                   const std::string* new_text, const PathPredicate& project_scope) {
    static const std::string kEmpty;
    const std::string& a = old_text ? *old_text : kEmpty;
    const std::string& b = new_text ? *new_text : kEmpty;
    if (looks_binary(a) || looks_binary(b)) return;
    LineChurn churn = line_churn(a, b);
    if (churn.total() == 0) return;
    FileStatus status = !old_text ? FileStatus::added : !new_text ? FileStatus::deleted : FileStatus::modified;
    diff.file_diffs.push_back({path, churn.added, churn.deleted, status});
    if (!project_scope || project_scope(path)) diff.project_churn += churn.total();
}

}  // namespace

PairDiff diff_pair(const RepoRef& repo, const ReleaseRef& from, const ReleaseRef& to,
                   const PathPredicate& project_scope) {
    GitRepository git(repo.path());
    PairDiff diff{from, to, {}, 0};
    TreeListing before = ls_tree(git, from.commit_id);
    TreeListing after = ls_tree(git, to.commit_id);

    std::map<std::string, std::pair<const TreeEntry*, const TreeEntry*>> changed;
    for (const auto& [path, entry] : before) {
        auto it = after.find(path);
        if (it == after.end() || it->second.object_id != entry.object_id) {
            changed[path] = {&entry, it == after.end() ? nullptr : &it->second};
        }
    }
    for (const auto& [path, entry] : after) {
        if (!before.contains(path)) changed[path] = {nullptr, &entry};
    }

    std::set<std::string> ids;
    for (const auto& [path, sides] : changed) {
        if (sides.first) ids.insert(sides.first->object_id);
        if (sides.second) ids.insert(sides.second->object_id);
    }
    auto blobs = read_blobs(git, ids);
    for (const auto& [path, sides] : changed) {
        add_file_diff(diff, path, sides.first ? &blobs.at(sides.first->object_id) : nullptr,
                      sides.second ? &blobs.at(sides.second->object_id) : nullptr, project_scope);
    }
    return diff;
}

PairDiff diff_trees(const ReleaseRef& from, const ReleaseRef& to, const FileTree& before, const FileTree& after,
                    const PathPredicate& project_scope) {
    PairDiff diff{from, to, {}, 0};
    std::set<std::string_view> paths;
    for (const auto& [path, text] : before) paths.insert(path);
    for (const auto& [path, text] : after) paths.insert(path);
    for (std::string_view path : paths) {
        const std::string* a = before.find(path);
        const std::string* b = after.find(path);
        if (a && b && *a == *b) continue;
        add_file_diff(diff, std::string(path), a, b, project_scope);
    }
    return diff;
}

}  // namespace fragmine
