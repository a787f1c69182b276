#include "fragmine/metrics.hpp"

#include <algorithm>

#include "fragmine/error.hpp"

namespace fragmine {

Ratio ratio(double numerator, double denominator) {
    if (denominator == 0.0) return std::nullopt;
    return numerator / denominator;
}

Ratio mean_defined(std::span<const Ratio> values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

Ratio lower_median(std::span<const Ratio> values) {
    std::vector<double> defined;
    for (const auto& v : values) {
        if (v) defined.push_back(*v);
    }
    if (defined.empty()) return std::nullopt;
    std::sort(defined.begin(), defined.end());
    return defined[(defined.size() - 1) / 2];
}

ReleasePairMetrics pair_metrics(const PairDiff& diff, const ReleaseTestStats& prev, const ReleaseTestStats& next,
                                std::span<const ClassChangeRecord> changes, PairOptions options) {
    if (prev.release != diff.from || next.release != diff.to || prev.tool != next.tool) {
        throw Error(Errc::inconsistent_inputs, "release stats do not match " + diff.from.name + ".." + diff.to.name);
    }
    std::set<std::string> covered;
    for (const auto& c : changes) covered.insert(c.path);
    if (covered != prev.test_files) {
        throw Error(Errc::inconsistent_inputs, "change records must cover the test files of " + diff.from.name);
    }

    ReleasePairMetrics m;
    m.from = diff.from.name;
    m.to = diff.to.name;
    m.pdiff = diff.project_churn;
    for (const auto& fd : diff.file_diffs) {
        bool is_test = prev.test_files.contains(fd.path) || next.test_files.contains(fd.path);
        if (!is_test) continue;
        if (options.exclude_new_files && fd.status == FileStatus::added) continue;
        m.tdiff += fd.churn();
    }
    m.ttl_prev = prev.ttl;
    m.plocs_prev = prev.plocs;
    m.ttl_next = next.ttl;
    m.plocs_next = next.plocs;
    m.ntc_prev = prev.ntc;
    m.ntc_next = next.ntc;
    m.tlr_prev = prev.tlr;
    m.tlr_next = next.tlr;

    for (const auto& c : changes) {
        m.mc += c.mc();
        m.mcmm += c.mcmm();
        m.mm += c.modified;
        m.tm_prev += c.methods_prev;
        if (!c.class_deleted) {
            m.methods_added += c.added;
            m.methods_deleted += c.deleted;
        }
    }

    const auto d = [](auto v) { return static_cast<double>(v); };
    m.mtlr = ratio(d(m.tdiff), d(m.ttl_prev));
    if (m.tlr_prev && *m.tlr_prev > 0.0) {
        m.mrtl = ratio(d(m.tdiff), d(m.pdiff));
        if (m.mrtl) m.tmr = *m.mrtl / *m.tlr_prev;
    }
    m.mcr = ratio(d(m.mc), d(m.ntc_prev));
    m.fcr = ratio(d(m.mcmm), d(m.ntc_prev));
    m.mmr = ratio(d(m.mm), d(m.tm_prev));
    m.rfcr = ratio(d(m.mcmm), d(m.mc));
    return m;
}

void ClassHistory::observe_release(const std::set<std::string>& test_files) {
    for (const auto& path : test_files) classes_.try_emplace(path);
}

void ClassHistory::observe_change(const ClassChangeRecord& change) {
    Track& t = classes_[change.path];
    t.modified = t.modified || change.mc() > 0;
    t.fragile = t.fragile || change.mcmm() > 0;
}

std::size_t ClassHistory::ever_modified() const {
    return static_cast<std::size_t>(
        std::count_if(classes_.begin(), classes_.end(), [](const auto& kv) { return kv.second.modified; }));
}

std::size_t ClassHistory::ever_fragile() const {
    return static_cast<std::size_t>(
        std::count_if(classes_.begin(), classes_.end(), [](const auto& kv) { return kv.second.fragile; }));
}

namespace {

template <typename Field>
Ratio average(std::span<const ReleasePairMetrics> series, Field field) {
    std::vector<Ratio> values;
    values.reserve(series.size());
    for (const auto& m : series) values.push_back(m.*field);
    return mean_defined(values);
}

}  // namespace

ProjectReport project_report(std::string repo, std::string tool, std::span<const ReleasePairMetrics> series,
                             const ClassHistory& history) {
    if (series.empty()) throw Error(Errc::empty_series, repo + " has no release transition");
    ProjectReport r;
    r.repo = std::move(repo);
    r.tool = std::move(tool);
    r.pairs = series.size();
    r.ntr = series.size() + 1;
    r.ntc_master = series.back().ntc_next;
    r.ttl_master = series.back().ttl_next;
    r.tlr_master = series.back().tlr_next;

    r.avg_tlr = average(series, &ReleasePairMetrics::tlr_next);
    r.avg_mtlr = average(series, &ReleasePairMetrics::mtlr);
    r.avg_mrtl = average(series, &ReleasePairMetrics::mrtl);
    r.avg_tmr = average(series, &ReleasePairMetrics::tmr);
    r.avg_mcr = average(series, &ReleasePairMetrics::mcr);
    r.avg_mmr = average(series, &ReleasePairMetrics::mmr);
    r.avg_fcr = average(series, &ReleasePairMetrics::fcr);
    r.avg_rfcr = average(series, &ReleasePairMetrics::rfcr);  // defined only where MC != 0

    for (const auto& m : series) {
        if (m.mc > 0) ++r.modified_pairs;
        if (m.mcmm > 0) ++r.fragile_pairs;
        if (m.methods_added + m.methods_deleted > 0) ++r.add_delete_pairs;
    }
    const auto n = static_cast<double>(r.pairs);
    r.mrr = static_cast<double>(r.modified_pairs) / n;
    r.frr = static_cast<double>(r.fragile_pairs) / n;
    r.adrr = static_cast<double>(r.add_delete_pairs) / n;

    r.classes_total = history.total();
    r.classes_modified = history.ever_modified();
    r.classes_fragile = history.ever_fragile();
    r.tsv = ratio(static_cast<double>(r.classes_modified), static_cast<double>(r.classes_total));
    r.tsf = ratio(static_cast<double>(r.classes_fragile), static_cast<double>(r.classes_total));
    return r;
}

namespace {

template <typename Field>
Ratio set_mean(std::span<const ProjectReport> reports, Field field) {
    std::vector<Ratio> values;
    for (const auto& r : reports) values.push_back(r.*field);
    return mean_defined(values);
}

template <typename Get>
Stat stat_of(std::span<const ProjectReport> reports, Get get) {
    std::vector<Ratio> values;
    for (const auto& r : reports) values.push_back(get(r));
    return {mean_defined(values), lower_median(values)};
}

// Pointers to every set-level mean, shared by the summary and overall row.
constexpr Ratio ToolSummary::*kSummaryMeans[] = {
    &ToolSummary::avg_tlr, &ToolSummary::avg_mtlr, &ToolSummary::avg_mrtl, &ToolSummary::avg_tmr,
    &ToolSummary::avg_mcr, &ToolSummary::avg_mmr,  &ToolSummary::avg_fcr,  &ToolSummary::avg_rfcr,
    &ToolSummary::mrr,     &ToolSummary::tsv,      &ToolSummary::frr,      &ToolSummary::adrr,
    &ToolSummary::tsf,
};
constexpr Ratio ProjectReport::*kProjectMeans[] = {
    &ProjectReport::avg_tlr, &ProjectReport::avg_mtlr, &ProjectReport::avg_mrtl, &ProjectReport::avg_tmr,
    &ProjectReport::avg_mcr, &ProjectReport::avg_mmr,  &ProjectReport::avg_fcr,  &ProjectReport::avg_rfcr,
    &ProjectReport::mrr,     &ProjectReport::tsv,      &ProjectReport::frr,      &ProjectReport::adrr,
    &ProjectReport::tsf,
};
static_assert(std::size(kSummaryMeans) == std::size(kProjectMeans));

}  // namespace

ToolSummary tool_summary(std::string tool, std::span<const ProjectReport> reports, std::size_t total_context,
                         bool baseline) {
    if (total_context == 0) throw Error(Errc::inconsistent_inputs, "empty context");
    ToolSummary s;
    s.tool = std::move(tool);
    s.baseline = baseline;
    s.n = reports.size();
    s.total_context = total_context;
    s.td = static_cast<double>(s.n) / static_cast<double>(total_context);
    s.ntr = stat_of(reports, [](const ProjectReport& r) -> Ratio { return static_cast<double>(r.ntr); });
    s.ntc = stat_of(reports, [](const ProjectReport& r) -> Ratio { return static_cast<double>(r.ntc_master); });
    s.ttl = stat_of(reports, [](const ProjectReport& r) -> Ratio { return static_cast<double>(r.ttl_master); });
    s.tlr = stat_of(reports, [](const ProjectReport& r) { return r.tlr_master; });
    for (std::size_t k = 0; k < std::size(kSummaryMeans); ++k) {
        s.*kSummaryMeans[k] = set_mean(reports, kProjectMeans[k]);
    }
    return s;
}

ToolSummary weighted_overall(std::span<const ToolSummary> summaries, std::string label) {
    ToolSummary row;
    row.tool = std::move(label);
    row.overall = true;
    auto weighted = [&](auto get) -> Ratio {
        double num = 0.0, den = 0.0;
        for (const auto& s : summaries) {
            Ratio x = get(s);
            if (s.baseline || !x) continue;
            num += static_cast<double>(s.n) * *x;
            den += static_cast<double>(s.n);
        }
        return ratio(num, den);
    };
    for (const auto& s : summaries) {
        if (s.baseline) continue;
        row.n += s.n;
        row.total_context = std::max(row.total_context, s.total_context);
    }
    row.td = weighted([](const ToolSummary& s) { return s.td; });
    row.ntr.mean = weighted([](const ToolSummary& s) { return s.ntr.mean; });
    row.ntc.mean = weighted([](const ToolSummary& s) { return s.ntc.mean; });
    row.ttl.mean = weighted([](const ToolSummary& s) { return s.ttl.mean; });
    row.tlr.mean = weighted([](const ToolSummary& s) { return s.tlr.mean; });
    for (auto field : kSummaryMeans) {
        row.*field = weighted([field](const ToolSummary& s) { return s.*field; });
    }
    return row;
}

PrecisionResult precision(std::span<const Label> labels) {
    PrecisionResult result;
    for (const auto& label : labels) {
        PrecisionReport& r = label.level == LabelLevel::method_level ? result.methods : result.classes;
        if (label.category == LabelCategory::gui) {
            ++r.tp;
        } else {
            ++r.fp;
        }
    }
    for (PrecisionReport* r : {&result.methods, &result.classes}) {
        r->p = ratio(static_cast<double>(r->tp), static_cast<double>(r->tp + r->fp));
    }
    return result;
}

}  // namespace fragmine
