#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fragmine/config.hpp"
#include "fragmine/ledger.hpp"
#include "fragmine/metrics.hpp"
#include "fragmine/report.hpp"

namespace fragmine {

inline constexpr std::string_view kToolVersion = "0.1.0";

struct AnalysisOptions {
    ProjectScope scope;
    DetectOptions detect;
    MethodCountOptions methods;
    PairOptions pair;
};

AnalysisOptions analysis_options(const RunConfig& config);

struct ToolAnalysis {
    std::string tool;
    bool baseline = false;
    std::vector<ReleasePairMetrics> pairs;
    std::optional<ProjectReport> report;  // set when the tool appears in the master release
};

struct RepoAnalysis {
    std::string repo;
    std::vector<ReleaseRef> releases;
    std::vector<ToolAnalysis> tools;
    std::vector<LedgerRecord> ledger;       // ordered by pair, then path
    std::vector<std::string> diagnostics;   // files skipped by the extractor
};

// Where analyze_history reads release trees and pair diffs from.
class HistorySource {
public:
    virtual ~HistorySource() = default;

    // Must contain at least every .java file and every project-scope file.
    virtual FileTree tree(const ReleaseRef& release) const = 0;
    // Defaults to diff_trees over the two loaded trees.
    virtual PairDiff diff(const ReleaseRef& from, const ReleaseRef& to, const FileTree& before,
                          const FileTree& after, const PathPredicate& scope) const;
};

RepoAnalysis analyze_history(std::string repo_id, std::vector<ReleaseRef> releases, const HistorySource& source,
                             std::span<const ToolSpec> tools, const AnalysisOptions& options);

// Walks every consecutive release pair of a fetched repository and computes
// the per-tool series, project reports and change ledger.
RepoAnalysis analyze_repository(const RepoRef& repo, std::span<const ToolSpec> tools,
                                const AnalysisOptions& options);

enum class RepoState { analyzed, skipped, failed };

std::string_view to_string(RepoState s) noexcept;

struct RepoStatus {
    std::string host_id;
    RepoState state = RepoState::failed;
    std::string detail;  // rejection reason or error text
};

struct RunManifest {
    std::string tool_version;
    std::string config_hash;
    int schema_version = 0;
    std::string started_at;
    std::string finished_at;
    std::vector<RepoStatus> repos;
    std::vector<std::string> outputs;
    std::vector<std::string> diagnostics;

    std::size_t analyzed() const;
};

/// Aggregated results of one run, before anything is written.
struct RunResults {
    std::vector<PairRow> pairs;
    std::vector<ProjectReport> projects;
    std::vector<ToolSummary> tools;  // per tool, then the weighted overall row
    std::vector<LedgerRecord> ledger;
};

// Discovers, fetches, filters and analyzes the corpus, then writes
// pairs.csv, projects.csv, tools.csv, metrics.json, change_ledger.jsonl and
// run_manifest.json into the output directory. Failures of single
// repositories are recorded in the manifest and never abort the run.
RunManifest run(const RunConfig& config, RunResults* results = nullptr);

}  // namespace fragmine
