#include "fragmine/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "fragmine/error.hpp"

namespace fragmine {
namespace {

using PairCount = std::uint64_t ReleasePairMetrics::*;
using PairSize = std::size_t ReleasePairMetrics::*;
using PairRatio = Ratio ReleasePairMetrics::*;

const std::vector<std::pair<std::string, PairCount>> kPairCounts = {
    {"tdiff", &ReleasePairMetrics::tdiff},       {"pdiff", &ReleasePairMetrics::pdiff},
    {"ttl_prev", &ReleasePairMetrics::ttl_prev}, {"plocs_prev", &ReleasePairMetrics::plocs_prev},
    {"ttl_next", &ReleasePairMetrics::ttl_next}, {"plocs_next", &ReleasePairMetrics::plocs_next},
};
const std::vector<std::pair<std::string, PairSize>> kPairSizes = {
    {"ntc_prev", &ReleasePairMetrics::ntc_prev},
    {"ntc_next", &ReleasePairMetrics::ntc_next},
    {"mc", &ReleasePairMetrics::mc},
    {"mcmm", &ReleasePairMetrics::mcmm},
    {"mm", &ReleasePairMetrics::mm},
    {"tm_prev", &ReleasePairMetrics::tm_prev},
    {"methods_added", &ReleasePairMetrics::methods_added},
    {"methods_deleted", &ReleasePairMetrics::methods_deleted},
};
const std::vector<std::pair<std::string, PairRatio>> kPairRatios = {
    {"tlr_prev", &ReleasePairMetrics::tlr_prev}, {"tlr_next", &ReleasePairMetrics::tlr_next},
    {"mtlr", &ReleasePairMetrics::mtlr},         {"mrtl", &ReleasePairMetrics::mrtl},
    {"tmr", &ReleasePairMetrics::tmr},           {"mcr", &ReleasePairMetrics::mcr},
    {"mmr", &ReleasePairMetrics::mmr},           {"fcr", &ReleasePairMetrics::fcr},
    {"rfcr", &ReleasePairMetrics::rfcr},
};

using ProjectRatio = Ratio ProjectReport::*;
using ProjectSize = std::size_t ProjectReport::*;

const std::vector<std::pair<std::string, ProjectRatio>> kProjectRatios = {
    {"tlr_master", &ProjectReport::tlr_master}, {"avg_tlr", &ProjectReport::avg_tlr},
    {"avg_mtlr", &ProjectReport::avg_mtlr},     {"avg_mrtl", &ProjectReport::avg_mrtl},
    {"avg_tmr", &ProjectReport::avg_tmr},       {"avg_mcr", &ProjectReport::avg_mcr},
    {"avg_mmr", &ProjectReport::avg_mmr},       {"avg_fcr", &ProjectReport::avg_fcr},
    {"avg_rfcr", &ProjectReport::avg_rfcr},     {"mrr", &ProjectReport::mrr},
    {"tsv", &ProjectReport::tsv},               {"frr", &ProjectReport::frr},
    {"adrr", &ProjectReport::adrr},             {"tsf", &ProjectReport::tsf},
};
const std::vector<std::pair<std::string, ProjectSize>> kProjectSizes = {
    {"pairs", &ProjectReport::pairs},
    {"modified_pairs", &ProjectReport::modified_pairs},
    {"fragile_pairs", &ProjectReport::fragile_pairs},
    {"add_delete_pairs", &ProjectReport::add_delete_pairs},
    {"classes_total", &ProjectReport::classes_total},
    {"classes_modified", &ProjectReport::classes_modified},
    {"classes_fragile", &ProjectReport::classes_fragile},
};

using ToolRatio = Ratio ToolSummary::*;
using ToolStat = Stat ToolSummary::*;

const std::vector<std::pair<std::string, ToolStat>> kToolStats = {
    {"ntr", &ToolSummary::ntr},
    {"ntc", &ToolSummary::ntc},
    {"ttl", &ToolSummary::ttl},
    {"tlr", &ToolSummary::tlr},
};
const std::vector<std::pair<std::string, ToolRatio>> kToolRatios = {
    {"avg_tlr", &ToolSummary::avg_tlr}, {"avg_mtlr", &ToolSummary::avg_mtlr}, {"avg_mrtl", &ToolSummary::avg_mrtl},
    {"avg_tmr", &ToolSummary::avg_tmr}, {"avg_mcr", &ToolSummary::avg_mcr},   {"avg_mmr", &ToolSummary::avg_mmr},
    {"avg_fcr", &ToolSummary::avg_fcr}, {"avg_rfcr", &ToolSummary::avg_rfcr}, {"mrr", &ToolSummary::mrr},
    {"tsv", &ToolSummary::tsv},         {"frr", &ToolSummary::frr},           {"adrr", &ToolSummary::adrr},
    {"tsf", &ToolSummary::tsf},
};

std::string quote(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
    std::string out = "\"";
    for (char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Ratio parse_number(const std::string& cell) {
    if (cell.empty()) return std::nullopt;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw Error(Errc::missing_input, "not a number: " + cell);
    }
    return v;
}

}  // namespace

const std::string& CsvTable::at(std::size_t row, std::string_view name) const {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw Error(Errc::missing_input, "column " + std::string(name));
    auto col = static_cast<std::size_t>(it - header.begin());
    if (row >= rows.size() || col >= rows[row].size()) {
        throw Error(Errc::missing_input, "row " + std::to_string(row) + " lacks " + std::string(name));
    }
    return rows[row][col];
}

CsvTable parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string cell;
    bool in_quotes = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            in_quotes = true;
            any = true;
        } else if (c == ',') {
            record.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !cell.empty()) {
                record.push_back(std::move(cell));
                records.push_back(std::move(record));
            }
            cell.clear();
            record.clear();
            any = false;
        } else {
            cell += c;
            any = true;
        }
    }
    if (any || !cell.empty()) {
        record.push_back(std::move(cell));
        records.push_back(std::move(record));
    }
    CsvTable table;
    if (records.empty()) return table;
    table.header = std::move(records.front());
    table.rows.assign(std::make_move_iterator(records.begin() + 1), std::make_move_iterator(records.end()));
    return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out << ',';
            out << quote(cells[i]);
        }
        out << '\n';
    };
    line(table.header);
    for (const auto& row : table.rows) line(row);
}

std::string format_number(const Ratio& value) {
    if (!value) return {};
    return fmt::format("{}", *value);
}

const std::vector<std::string>& pair_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = {"repo", "tool", "from", "to"};
        for (const auto& [name, _] : kPairCounts) c.push_back(name);
        for (const auto& [name, _] : kPairSizes) c.push_back(name);
        for (const auto& [name, _] : kPairRatios) {
            c.push_back(name);
            c.push_back(name + "_defined");
        }
        return c;
    }();
    return cols;
}

const std::vector<std::string>& project_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = {"repo", "tool", "ntr", "ntc_master", "ttl_master"};
        for (const auto& [name, _] : kProjectSizes) c.push_back(name);
        for (const auto& [name, _] : kProjectRatios) {
            c.push_back(name);
            c.push_back(name + "_defined");
        }
        return c;
    }();
    return cols;
}

const std::vector<std::string>& tool_columns() {
    static const std::vector<std::string> cols = [] {
        std::vector<std::string> c = {"tool", "row_kind", "baseline", "n", "total_context", "td"};
        for (const auto& [name, _] : kToolStats) {
            c.push_back(name + "_mean");
            c.push_back(name + "_median");
        }
        for (const auto& [name, _] : kToolRatios) c.push_back(name);
        return c;
    }();
    return cols;
}

CsvTable pairs_table(std::span<const PairRow> rows) {
    CsvTable t{pair_columns(), {}};
    for (const auto& r : rows) {
        std::vector<std::string> cells = {r.repo, r.tool, r.metrics.from, r.metrics.to};
        for (const auto& [_, f] : kPairCounts) cells.push_back(std::to_string(r.metrics.*f));
        for (const auto& [_, f] : kPairSizes) cells.push_back(std::to_string(r.metrics.*f));
        for (const auto& [_, f] : kPairRatios) {
            cells.push_back(format_number(r.metrics.*f));
            cells.push_back((r.metrics.*f) ? "1" : "0");
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

CsvTable projects_table(std::span<const ProjectReport> reports) {
    CsvTable t{project_columns(), {}};
    for (const auto& r : reports) {
        std::vector<std::string> cells = {r.repo, r.tool, std::to_string(r.ntr), std::to_string(r.ntc_master),
                                          std::to_string(r.ttl_master)};
        for (const auto& [_, f] : kProjectSizes) cells.push_back(std::to_string(r.*f));
        for (const auto& [_, f] : kProjectRatios) {
            cells.push_back(format_number(r.*f));
            cells.push_back((r.*f) ? "1" : "0");
        }
        t.rows.push_back(std::move(cells));
    }
    return t;
}

CsvTable tools_table(std::span<const ToolSummary> summaries) {
    CsvTable t{tool_columns(), {}};
    for (const auto& s : summaries) {
        std::vector<std::string> cells = {s.tool,
                                          s.overall ? "overall" : "tool",
                                          s.baseline ? "1" : "0",
                                          std::to_string(s.n),
                                          std::to_string(s.total_context),
                                          format_number(s.td)};
        for (const auto& [_, f] : kToolStats) {
            cells.push_back(format_number((s.*f).mean));
            cells.push_back(format_number((s.*f).median));
        }
        for (const auto& [_, f] : kToolRatios) cells.push_back(format_number(s.*f));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

std::vector<ToolSummary> parse_tools_table(const CsvTable& table) {
    std::vector<ToolSummary> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        ToolSummary s;
        s.tool = table.at(i, "tool");
        s.baseline = table.at(i, "baseline") == "1";
        s.overall = table.at(i, "row_kind") == "overall";
        s.n = static_cast<std::size_t>(parse_number(table.at(i, "n")).value_or(0));
        s.total_context = static_cast<std::size_t>(parse_number(table.at(i, "total_context")).value_or(0));
        s.td = parse_number(table.at(i, "td"));
        for (const auto& [name, f] : kToolStats) {
            (s.*f).mean = parse_number(table.at(i, name + "_mean"));
            (s.*f).median = parse_number(table.at(i, name + "_median"));
        }
        for (const auto& [name, f] : kToolRatios) s.*f = parse_number(table.at(i, name));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

std::string percent(const Ratio& r, int decimals) {
    if (!r) return "n/a";
    return fmt::format("{:.{}f}%", *r * 100.0, decimals);
}

std::string integer(const Ratio& r) {
    if (!r) return "n/a";
    return fmt::format("{:.0f}", *r);
}

std::string avg_median(const Stat& s, bool as_percent) {
    auto cell = [&](const Ratio& r) { return as_percent ? percent(r, 1) : integer(r); };
    if (!s.median) return cell(s.mean);
    return cell(s.mean) + " (" + cell(s.median) + ")";
}

std::string join(const std::vector<std::string>& cells) {
    std::string out;
    for (const auto& c : cells) {
        if (!out.empty()) out += "  ";
        out += c;
    }
    return out + "\n";
}

}  // namespace

std::string render_summary(std::span<const ToolSummary> summaries) {
    std::string out = "Diffusion and size (master release, average (median))\n";
    out += join({"Tool", "n", "TD", "NTR", "NTC", "TTL", "TLR"});
    for (const auto& s : summaries) {
        out += join({s.tool, std::to_string(s.n), percent(s.td, 2), avg_median(s.ntr, false),
                     avg_median(s.ntc, false), avg_median(s.ttl, false), avg_median(s.tlr, true)});
    }
    out += "\nTest evolution (set averages)\n";
    out += join({"Tool", "TLR", "MTLR", "MRTL", "TMR", "MRR", "TSV"});
    for (const auto& s : summaries) {
        out += join({s.tool, percent(s.avg_tlr, 1), percent(s.avg_mtlr, 1), percent(s.avg_mrtl, 1),
                     s.avg_tmr ? fmt::format("{:.2f}", *s.avg_tmr) : "n/a", percent(s.mrr, 1), percent(s.tsv, 1)});
    }
    out += "\nFragility (set averages)\n";
    out += join({"Tool", "MCR", "MMR", "FCR", "RFCR", "FRR", "ADRR", "TSF"});
    for (const auto& s : summaries) {
        out += join({s.tool, percent(s.avg_mcr, 1), percent(s.avg_mmr, 1), percent(s.avg_fcr, 1),
                     percent(s.avg_rfcr, 1), percent(s.frr, 1), percent(s.adrr, 1), percent(s.tsf, 1)});
    }
    return out;
}

std::string render_summary(std::string_view tools_csv) {
    auto summaries = parse_tools_table(parse_csv(tools_csv));
    return render_summary(summaries);
}

}  // namespace fragmine
