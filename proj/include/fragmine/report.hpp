#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/metrics.hpp"

namespace fragmine {

// Bumped whenever a CSV column set changes; recorded in run_manifest.json.
inline constexpr int kSchemaVersion = 1;

struct PairRow {
    std::string repo;
    std::string tool;
    ReleasePairMetrics metrics;
};

/// Minimal RFC 4180 table: a header and string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Cell of `row` under column `name`; throws Error{missing_input}.
    const std::string& at(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
void write_csv(std::ostream& out, const CsvTable& table);

// Shortest round-trip decimal; empty for undefined ratios.
std::string format_number(const Ratio& value);

const std::vector<std::string>& pair_columns();
const std::vector<std::string>& project_columns();
const std::vector<std::string>& tool_columns();

CsvTable pairs_table(std::span<const PairRow> rows);
CsvTable projects_table(std::span<const ProjectReport> reports);
CsvTable tools_table(std::span<const ToolSummary> summaries);

// Reads tools.csv rows back into summaries (inverse of tools_table).
std::vector<ToolSummary> parse_tools_table(const CsvTable& table);

// Human-readable tables: diffusion and size with "avg (median)" cells,
// test evolution, and fragility, each ending in the weighted "Average" row
// when tools.csv carries one.
std::string render_summary(std::span<const ToolSummary> summaries);
std::string render_summary(std::string_view tools_csv);

}  // namespace fragmine
