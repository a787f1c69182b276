#include "fragmine/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "fragmine/error.hpp"
#include "fragmine/method_extractor.hpp"

namespace fs = std::filesystem;

namespace fragmine {

AnalysisOptions analysis_options(const RunConfig& config) {
    AnalysisOptions o;
    o.scope = ProjectScope(config.project_scope);
    o.detect.case_sensitive = config.case_sensitive_keywords;
    o.methods.annotated_only = config.annotated_only;
    o.pair.exclude_new_files = config.exclude_new_files;
    return o;
}

namespace {

// Extracted snapshots of one release, parsed on first use.
class SnapshotCache {
public:
    SnapshotCache(const FileTree& tree, std::string release, std::vector<std::string>& diagnostics)
        : tree_(&tree), release_(std::move(release)), diagnostics_(&diagnostics) {}

    // Files the extractor rejects yield a snapshot without methods.
    const ClassSnapshot* get(const std::string& path) {
        auto it = cache_.find(path);
        if (it != cache_.end()) return &it->second;
        const std::string* source = tree_->find(path);
        if (!source) return nullptr;
        ClassSnapshot snap;
        try {
            snap = extract(*source, path, release_);
        } catch (const Error& e) {
            diagnostics_->push_back(fmt::format("{}@{}: {}", path, release_, e.what()));
            snap = ClassSnapshot{path, release_, {}, {}};
        }
        return &cache_.emplace(path, std::move(snap)).first->second;
    }

private:
    const FileTree* tree_;
    std::string release_;
    std::vector<std::string>* diagnostics_;
    std::map<std::string, ClassSnapshot> cache_;
};

}  // namespace

RepoAnalysis analyze_history(std::string repo_id, std::vector<ReleaseRef> releases, const HistorySource& source,
                             std::span<const ToolSpec> tools, const AnalysisOptions& options) {
    if (releases.empty()) throw Error(Errc::no_releases, repo_id);
    RepoAnalysis out;
    out.repo = std::move(repo_id);
    out.releases = std::move(releases);
    const auto& releases_ = out.releases;
    const ProjectScope& scope = options.scope;

    FileTree prev_tree = source.tree(releases_.front());
    std::vector<ReleaseTestStats> prev_stats;
    std::vector<ClassHistory> histories(tools.size());
    for (std::size_t t = 0; t < tools.size(); ++t) {
        prev_stats.push_back(release_stats(prev_tree, releases_.front(), tools[t], scope, options.detect));
        histories[t].observe_release(prev_stats[t].test_files);
        out.tools.push_back({tools[t].name, tools[t].baseline, {}, std::nullopt});
    }

    for (std::size_t i = 1; i < releases_.size(); ++i) {
        const ReleaseRef& from = releases_[i - 1];
        const ReleaseRef& to = releases_[i];
        FileTree next_tree = source.tree(to);
        PairDiff diff = source.diff(from, to, prev_tree, next_tree, scope);
        SnapshotCache before(prev_tree, from.name, out.diagnostics);
        SnapshotCache after(next_tree, to.name, out.diagnostics);
        std::map<std::string, LedgerRecord> pair_ledger;

        for (std::size_t t = 0; t < tools.size(); ++t) {
            ReleaseTestStats next_stats = release_stats(next_tree, to, tools[t], scope, options.detect);
            std::vector<ClassChangeRecord> changes;
            for (const auto& path : prev_stats[t].test_files) {
                const ClassSnapshot* prev_snap = before.get(path);
                const std::string* old_src = prev_tree.find(path);
                const std::string* new_src = next_tree.find(path);
                std::optional<ClassSnapshot> next_snap;
                if (new_src) next_snap = *after.get(path);
                changes.push_back(classify_class(*prev_snap, next_snap, new_src && *old_src != *new_src,
                                                 options.methods));
            }
            out.tools[t].pairs.push_back(pair_metrics(diff, prev_stats[t], next_stats, changes, options.pair));
            histories[t].observe_release(next_stats.test_files);
            for (const auto& c : changes) {
                histories[t].observe_change(c);
                auto [it, fresh] = pair_ledger.try_emplace(c.path);
                if (fresh) it->second = make_ledger_record(out.repo, from.name, to.name, c);
                it->second.tools.push_back(tools[t].name);
            }
            prev_stats[t] = std::move(next_stats);
        }
        for (auto& [path, rec] : pair_ledger) out.ledger.push_back(std::move(rec));
        prev_tree = std::move(next_tree);
    }

    for (std::size_t t = 0; t < tools.size(); ++t) {
        auto& ta = out.tools[t];
        if (!ta.pairs.empty() && prev_stats[t].ntc > 0) {
            ta.report = project_report(out.repo, ta.tool, ta.pairs, histories[t]);
        }
    }
    return out;
}

namespace {

class GitHistory : public HistorySource {
public:
    GitHistory(const RepoRef& repo, const ProjectScope& scope) : repo_(repo), scope_(scope) {}

    FileTree tree(const ReleaseRef& release) const override {
        const ProjectScope& scope = scope_;
        return snapshot(repo_, release, [&scope](std::string_view p) { return scope(p) || p.ends_with(".java"); });
    }
    PairDiff diff(const ReleaseRef& from, const ReleaseRef& to, const FileTree&, const FileTree&,
                  const PathPredicate& scope) const override {
        return diff_pair(repo_, from, to, scope);
    }

private:
    const RepoRef& repo_;
    const ProjectScope& scope_;
};

}  // namespace

PairDiff HistorySource::diff(const ReleaseRef& from, const ReleaseRef& to, const FileTree& before,
                             const FileTree& after, const PathPredicate& scope) const {
    return diff_trees(from, to, before, after, scope);
}

RepoAnalysis analyze_repository(const RepoRef& repo, std::span<const ToolSpec> tools,
                                const AnalysisOptions& options) {
    GitHistory source(repo, options.scope);
    return analyze_history(repo.host_id, list_releases(repo), source, tools, options);
}

std::string_view to_string(RepoState s) noexcept {
    switch (s) {
        case RepoState::analyzed: return "analyzed";
        case RepoState::skipped: return "skipped";
        case RepoState::failed: return "failed";
    }
    return "failed";
}

std::size_t RunManifest::analyzed() const {
    return static_cast<std::size_t>(std::count_if(repos.begin(), repos.end(),
                                                  [](const RepoStatus& r) { return r.state == RepoState::analyzed; }));
}

namespace {

std::string utc_now() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<RepoRef> corpus_repos(const RunConfig& config) {
    switch (config.corpus.kind) {
        case CorpusKind::fixture: {
            FixtureIndexBackend backend(config.corpus.fixture_dir);
            return discover(backend, config.corpus.query, config.corpus.page_limit);
        }
        case CorpusKind::hosting: {
            HostingApiBackend::Options opts;
            opts.base_url = config.corpus.api_base;
            if (const char* token = std::getenv(kTokenEnv)) opts.token = token;
            HostingApiBackend backend(opts);
            return discover(backend, config.corpus.query, config.corpus.page_limit);
        }
        case CorpusKind::list: {
            std::vector<RepoRef> repos = config.corpus.repos;
            std::sort(repos.begin(), repos.end(), [](const auto& a, const auto& b) { return a.host_id < b.host_id; });
            repos.erase(std::unique(repos.begin(), repos.end(),
                                    [](const auto& a, const auto& b) { return a.host_id == b.host_id; }),
                        repos.end());
            return repos;
        }
    }
    return {};
}

struct RepoOutcome {
    RepoStatus status;
    std::optional<RepoAnalysis> analysis;
};

RepoOutcome process_repo(const RepoRef& ref, const RunConfig& config, const AnalysisOptions& options) {
    RepoOutcome outcome;
    outcome.status.host_id = ref.host_id;
    try {
        RepoRef repo = fetch(ref, config.cache_dir);
        FilterResult filter = passes_filter(repo, config.filter);
        if (!filter.passed) {
            outcome.status.state = RepoState::skipped;
            outcome.status.detail = std::string(to_string(filter.reason));
            return outcome;
        }
        outcome.analysis = analyze_repository(repo, config.tools, options);
        outcome.status.state = RepoState::analyzed;
    } catch (const std::exception& e) {
        outcome.status.state = RepoState::failed;
        outcome.status.detail = e.what();
        outcome.analysis.reset();
    }
    return outcome;
}

nlohmann::json table_json(const CsvTable& table, std::initializer_list<std::string_view> text_columns) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < table.header.size(); ++c) {
            const std::string& name = table.header[c];
            const std::string& cell = row[c];
            bool text = std::find(text_columns.begin(), text_columns.end(), name) != text_columns.end();
            if (text) {
                obj[name] = cell;
            } else if (cell.empty()) {
                obj[name] = nullptr;
            } else {
                obj[name] = std::stod(cell);
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::output_unwritable, path.string());
    out << content;
    if (!out) throw Error(Errc::output_unwritable, path.string());
}

std::string csv_text(const CsvTable& table) {
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

}  // namespace

RunManifest run(const RunConfig& config, RunResults* results) {
    RunManifest manifest;
    manifest.tool_version = std::string(kToolVersion);
    manifest.config_hash = stable_hash({config.source_text});
    manifest.schema_version = kSchemaVersion;
    manifest.started_at = utc_now();

    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec || !fs::is_directory(config.output_dir)) throw Error(Errc::output_unwritable, config.output_dir.string());

    const std::vector<RepoRef> repos = corpus_repos(config);
    const AnalysisOptions options = analysis_options(config);

    std::vector<RepoOutcome> outcomes(repos.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < repos.size(); i = next++) {
            outcomes[i] = process_repo(repos[i], config, options);
        }
    };
    {
        std::vector<std::jthread> pool;
        const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, repos.size()));
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    RunResults res;
    std::map<std::string, std::vector<ProjectReport>> per_tool;
    std::size_t context = 0;
    for (auto& o : outcomes) {
        manifest.repos.push_back(o.status);
        if (!o.analysis) continue;
        ++context;
        for (const auto& d : o.analysis->diagnostics) manifest.diagnostics.push_back(o.status.host_id + ": " + d);
        for (const auto& ta : o.analysis->tools) {
            for (const auto& m : ta.pairs) res.pairs.push_back({o.status.host_id, ta.tool, m});
            if (ta.report) {
                res.projects.push_back(*ta.report);
                per_tool[ta.tool].push_back(*ta.report);
            }
        }
        for (auto& rec : o.analysis->ledger) res.ledger.push_back(std::move(rec));
    }

    if (context > 0) {
        for (const auto& tool : config.tools) {
            res.tools.push_back(tool_summary(tool.name, per_tool[tool.name], context, tool.baseline));
        }
        res.tools.push_back(weighted_overall(res.tools));
    }

    const CsvTable pairs = pairs_table(res.pairs);
    const CsvTable projects = projects_table(res.projects);
    const CsvTable tools = tools_table(res.tools);
    write_file(config.output_dir / "pairs.csv", csv_text(pairs));
    write_file(config.output_dir / "projects.csv", csv_text(projects));
    write_file(config.output_dir / "tools.csv", csv_text(tools));

    nlohmann::json mirror = {
        {"schema_version", kSchemaVersion},
        {"pairs", table_json(pairs, {"repo", "tool", "from", "to"})},
        {"projects", table_json(projects, {"repo", "tool"})},
        {"tools", table_json(tools, {"tool", "row_kind"})},
    };
    write_file(config.output_dir / "metrics.json", mirror.dump(2) + "\n");

    std::ostringstream ledger;
    write_ledger(ledger, res.ledger);
    write_file(config.output_dir / "change_ledger.jsonl", ledger.str());
    manifest.outputs = {"pairs.csv", "projects.csv", "tools.csv", "metrics.json", "change_ledger.jsonl"};

    if (config.sample_k > 0) {
        try {
            std::string text;
            for (const auto& id : sample_for_validation(res.ledger, config.sample_k, config.sample_seed)) {
                text += id + "\n";
            }
            write_file(config.output_dir / "validation_sample.txt", text);
            manifest.outputs.push_back("validation_sample.txt");
        } catch (const Error& e) {
            if (e.code() != Errc::insufficient_records) throw;
            manifest.diagnostics.push_back(std::string("validation sample: ") + e.what());
        }
    }

    manifest.outputs.push_back("run_manifest.json");
    manifest.finished_at = utc_now();
    nlohmann::json repos_json = nlohmann::json::array();
    for (const auto& r : manifest.repos) {
        repos_json.push_back({{"id", r.host_id}, {"status", to_string(r.state)}, {"detail", r.detail}});
    }
    nlohmann::json m = {
        {"tool_version", manifest.tool_version},
        {"config_hash", manifest.config_hash},
        {"schema_version", manifest.schema_version},
        {"started_at", manifest.started_at},
        {"finished_at", manifest.finished_at},
        {"repos", repos_json},
        {"outputs", manifest.outputs},
        {"diagnostics", manifest.diagnostics},
    };
    write_file(config.output_dir / "run_manifest.json", m.dump(2) + "\n");

    if (results) *results = std::move(res);
    return manifest;
}

}  // namespace fragmine
