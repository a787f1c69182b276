#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "fragmine/error.hpp"
#include "fragmine/report.hpp"

using namespace fragmine;

namespace {

std::string line_starting(const std::string& text, const std::string& prefix) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(prefix, 0) == 0) return line;
    }
    return {};
}

ToolSummary espresso_row() {
    ToolSummary s;
    s.tool = "Espresso";
    s.n = 423;
    s.total_context = 18930;
    s.td = 423.0 / 18930.0;
    s.ntr = {15.2, 6.0};
    s.ntc = {4.8, 2.0};
    s.ttl = {588.3, 190.0};
    s.tlr = {0.088, 0.041};
    return s;
}

}  // namespace

TEST(Csv, QuotingRoundTrip) {
    CsvTable t{{"a", "b"}, {{"plain", "has,comma"}, {"say \"hi\"", "two\nlines"}, {"", "x"}}};
    std::ostringstream out;
    write_csv(out, t);
    EXPECT_EQ(out.str(), "a,b\nplain,\"has,comma\"\n\"say \"\"hi\"\"\",\"two\nlines\"\n,x\n");
    CsvTable back = parse_csv(out.str());
    EXPECT_EQ(back.header, t.header);
    EXPECT_EQ(back.rows, t.rows);
    EXPECT_EQ(back.at(1, "b"), "two\nlines");
    EXPECT_THROW(back.at(0, "c"), Error);
}

TEST(Csv, NumbersRoundTripExactly) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        double v = u(rng);
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
    EXPECT_EQ(format_number(0.25), "0.25");
    EXPECT_EQ(format_number(std::nullopt), "");
}

TEST(Csv, ToolsTableRoundTrip) {
    ToolSummary a = espresso_row();
    a.avg_mcr = 0.123456789;
    ToolSummary junit;
    junit.tool = "JUnit";
    junit.baseline = true;
    junit.n = 3;
    junit.total_context = 3;
    junit.td = 1.0;
    ToolSummary overall;
    overall.tool = "Average";
    overall.overall = true;
    overall.tsf = 0.5;
    std::vector<ToolSummary> rows = {a, junit, overall};
    CsvTable t = tools_table(rows);
    EXPECT_EQ(t.header, tool_columns());
    std::ostringstream out;
    write_csv(out, t);
    auto back = parse_tools_table(parse_csv(out.str()));
    ASSERT_EQ(back.size(), 3u);
    EXPECT_EQ(back[0].tool, "Espresso");
    EXPECT_EQ(back[0].n, 423u);
    EXPECT_EQ(*back[0].td, *a.td);
    EXPECT_EQ(*back[0].avg_mcr, 0.123456789);
    EXPECT_EQ(*back[0].ttl.median, 190.0);
    EXPECT_FALSE(back[0].avg_rfcr);
    EXPECT_TRUE(back[1].baseline);
    EXPECT_TRUE(back[2].overall);
    EXPECT_EQ(*back[2].tsf, 0.5);
    std::ostringstream again;
    write_csv(again, tools_table(back));
    EXPECT_EQ(again.str(), out.str());
}

TEST(Csv, PairAndProjectColumnsAreClosed) {
    PairRow row{"org/app", "Espresso", {}};
    row.metrics.from = "v1";
    row.metrics.to = "v2";
    row.metrics.mcr = 0.5;
    CsvTable t = pairs_table(std::span<const PairRow>(&row, 1));
    EXPECT_EQ(t.header, pair_columns());
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0].size(), t.header.size());
    EXPECT_EQ(t.at(0, "mcr"), "0.5");
    EXPECT_EQ(t.at(0, "mcr_defined"), "1");
    EXPECT_EQ(t.at(0, "rfcr"), "");
    EXPECT_EQ(t.at(0, "rfcr_defined"), "0");

    ProjectReport p;
    p.repo = "org/app";
    p.tool = "Espresso";
    p.mrr = 0.25;
    CsvTable pt = projects_table(std::span<const ProjectReport>(&p, 1));
    EXPECT_EQ(pt.header, project_columns());
    EXPECT_EQ(pt.at(0, "mrr"), "0.25");
    EXPECT_EQ(pt.at(0, "tsv_defined"), "0");
}

TEST(Render, EspressoDiffusionRow) {
    std::vector<ToolSummary> rows = {espresso_row()};
    EXPECT_EQ(line_starting(render_summary(rows), "Espresso  423"),
              "Espresso  423  2.23%  15 (6)  5 (2)  588 (190)  8.8% (4.1%)");
}

TEST(Render, SingleProjectShowsEqualMeanAndMedian) {
    ToolSummary s;
    s.tool = "Robotium";
    s.n = 1;
    s.total_context = 4;
    s.td = 0.25;
    s.ntr = {7.0, 7.0};
    s.ntc = {3.0, 3.0};
    s.ttl = {120.0, 120.0};
    s.tlr = {0.1, 0.1};
    std::vector<ToolSummary> rows = {s};
    EXPECT_EQ(line_starting(render_summary(rows), "Robotium  1"), "Robotium  1  25.00%  7 (7)  3 (3)  120 (120)  10.0% (10.0%)");
}

TEST(Render, UndefinedCellsAndOverallRow) {
    ToolSummary empty;
    empty.tool = "Appium";
    empty.td = 0.0;
    ToolSummary overall;
    overall.tool = "Average";
    overall.overall = true;
    overall.n = 5;
    overall.td = 0.1;
    overall.ntr.mean = 6.0;
    overall.avg_tmr = 1.234;
    std::vector<ToolSummary> rows = {empty, overall};
    std::string text = render_summary(rows);
    EXPECT_EQ(line_starting(text, "Appium  0"), "Appium  0  0.00%  n/a  n/a  n/a  n/a");
    EXPECT_EQ(line_starting(text, "Average  5"), "Average  5  10.00%  6  n/a  n/a  n/a");
    EXPECT_EQ(line_starting(text, "Average  n/a"), "Average  n/a  n/a  n/a  1.23  n/a  n/a");
}

TEST(Render, FromCsvText) {
    std::vector<ToolSummary> rows = {espresso_row()};
    std::ostringstream csv;
    write_csv(csv, tools_table(rows));
    EXPECT_EQ(render_summary(csv.str()), render_summary(rows));
    EXPECT_THROW(render_summary(std::string_view("tool,n\nX,1\n")), Error);
}
