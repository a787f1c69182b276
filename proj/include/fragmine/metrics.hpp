#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "fragmine/change_classifier.hpp"
#include "fragmine/history.hpp"
#include "fragmine/test_detector.hpp"

namespace fragmine {

// A ratio whose denominator may be zero. Absent values never enter a mean.
using Ratio = std::optional<double>;

Ratio ratio(double numerator, double denominator);

// Mean over the defined entries; absent when none is defined.
Ratio mean_defined(std::span<const Ratio> values);

// Lower median (element (n-1)/2 of the sorted defined values).
Ratio lower_median(std::span<const Ratio> values);

/// Every per-transition metric for one tool between releases i-1 and i.
struct ReleasePairMetrics {
    std::string from;
    std::string to;

    std::uint64_t tdiff = 0;  // churned test LOCs
    std::uint64_t pdiff = 0;  // churned project LOCs
    std::uint64_t ttl_prev = 0, plocs_prev = 0;
    std::uint64_t ttl_next = 0, plocs_next = 0;
    std::size_t ntc_prev = 0, ntc_next = 0;
    Ratio tlr_prev, tlr_next;

    std::size_t mc = 0;    // modified test classes
    std::size_t mcmm = 0;  // modified test classes with a modified method
    std::size_t mm = 0;    // modified test methods
    std::size_t tm_prev = 0;
    std::size_t methods_added = 0, methods_deleted = 0;

    Ratio mtlr, mrtl, tmr;
    Ratio mcr, mmr, fcr, rfcr;
};

struct PairOptions {
    // Leave churn of test files created in this transition out of Tdiff.
    bool exclude_new_files = false;
};

// Throws Error{inconsistent_inputs} when the stats do not belong to the
// diff's releases or when a change record is not one of prev's test files.
ReleasePairMetrics pair_metrics(const PairDiff& diff, const ReleaseTestStats& prev, const ReleaseTestStats& next,
                                std::span<const ClassChangeRecord> changes, PairOptions options = {});

/// Lifespan bookkeeping of test classes; a renamed file is a new class.
class ClassHistory {
public:
    void observe_release(const std::set<std::string>& test_files);
    void observe_change(const ClassChangeRecord& change);

    std::size_t total() const noexcept { return classes_.size(); }
    std::size_t ever_modified() const;
    std::size_t ever_fragile() const;

private:
    struct Track {
        bool modified = false;
        bool fragile = false;
    };
    std::map<std::string, Track> classes_;
};

struct ProjectReport {
    std::string repo;
    std::string tool;
    std::size_t ntr = 0;
    std::size_t ntc_master = 0;
    std::uint64_t ttl_master = 0;
    Ratio tlr_master;

    Ratio avg_tlr, avg_mtlr, avg_mrtl, avg_tmr;
    Ratio avg_mcr, avg_mmr, avg_fcr, avg_rfcr;
    Ratio mrr, tsv, frr, adrr, tsf;

    std::size_t pairs = 0;
    std::size_t modified_pairs = 0, fragile_pairs = 0, add_delete_pairs = 0;
    std::size_t classes_total = 0, classes_modified = 0, classes_fragile = 0;
};

// Transition counts (MRR, FRR, ADRR) use the number of release transitions
// as denominator; averages skip undefined pair values. Throws
// Error{empty_series} without any pair.
ProjectReport project_report(std::string repo, std::string tool, std::span<const ReleasePairMetrics> series,
                             const ClassHistory& history);

struct Stat {
    Ratio mean;
    Ratio median;
};

/// Aggregates of one tool's project set, or the weighted overall row.
struct ToolSummary {
    std::string tool;
    bool baseline = false;
    bool overall = false;  // the weighted row across tools
    std::size_t n = 0;
    std::size_t total_context = 0;
    Ratio td;
    Stat ntr, ntc, ttl, tlr;  // master release

    Ratio avg_tlr, avg_mtlr, avg_mrtl, avg_tmr;
    Ratio avg_mcr, avg_mmr, avg_fcr, avg_rfcr;
    Ratio mrr, tsv, frr, adrr, tsf;
};

// Throws Error{inconsistent_inputs} when total_context is zero. An empty
// report set yields TD = 0 and undefined averages.
ToolSummary tool_summary(std::string tool, std::span<const ProjectReport> reports, std::size_t total_context,
                         bool baseline = false);

// Size-weighted mean of the non-baseline summaries: sum(n_t x_t) / sum(n_t)
// over the tools where x_t is defined. Medians of the row are undefined.
ToolSummary weighted_overall(std::span<const ToolSummary> summaries, std::string label = "Average");

enum class LabelLevel { class_level, method_level };
enum class LabelCategory { refactoring, non_gui, gui };

struct Label {
    std::string record_id;
    LabelLevel level;
    LabelCategory category;
};

struct PrecisionReport {
    std::size_t tp = 0;
    std::size_t fp = 0;
    Ratio p;
};

struct PrecisionResult {
    PrecisionReport methods;
    PrecisionReport classes;
};

// TP = labels categorized "gui"; every other category is a false positive.
PrecisionResult precision(std::span<const Label> labels);

}  // namespace fragmine
