#include <gtest/gtest.h>

#include "fragmine/error.hpp"
#include "fragmine/git.hpp"
#include "fragmine/ledger.hpp"
#include "fragmine/pipeline.hpp"
#include "fragmine/report.hpp"
#include "invariants.hpp"
#include "oracle_compare.hpp"
#include "test_support.hpp"

using namespace fragmine;
namespace fs = std::filesystem;

namespace {

struct FixtureRun {
    fs::path dir;
    RunManifest manifest;
    RunResults results;
};

FixtureRun run_fixtures(const std::string& extra = {}) {
    FixtureRun r;
    r.dir = testkit::scratch_dir("pipeline");
    r.manifest = run(load_config(testkit::write_fixture_config(r.dir, extra)), &r.results);
    return r;
}

const FixtureRun& shared_run() {
    static const FixtureRun r = run_fixtures();
    return r;
}

ProcessResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), testkit::cli_path().string());
    return run_process(args);
}

const std::vector<std::string> kDeterministicOutputs = {"pairs.csv", "projects.csv", "tools.csv", "metrics.json",
                                                        "change_ledger.jsonl"};

}  // namespace

TEST(FixturePipeline, MatchesTheIndependentOracle) {
    const auto& r = shared_run();
    EXPECT_EQ(r.results.pairs.size(), 126u);
    for (const auto& d : testkit::compare_with_oracle(r.results, testkit::fixture_oracle())) ADD_FAILURE() << d;
}

TEST(FixturePipeline, OracleComparisonSeesSmallDifferences) {
    nlohmann::json oracle = testkit::fixture_oracle();
    oracle["pairs"][0]["mcr"] = oracle["pairs"][0]["mcr"].get<double>() + 1e-9;
    oracle["projects"][0]["tsv"] = nullptr;
    oracle["tools"][0]["n"] = 3;
    oracle["pairs"].erase(oracle["pairs"].begin() + 5);
    auto diffs = testkit::compare_with_oracle(shared_run().results, oracle);
    // The dropped row shows up twice: in the row count and as an unmatched pair.
    EXPECT_EQ(diffs.size(), 5u);
}

TEST(FixturePipeline, RepositoryStates) {
    std::map<std::string, std::pair<RepoState, std::string>> states;
    for (const auto& s : shared_run().manifest.repos) states[s.host_id] = {s.state, s.detail};
    ASSERT_EQ(states.size(), 5u);
    EXPECT_EQ(states["fixtures/alpha"].first, RepoState::analyzed);
    EXPECT_EQ(states["fixtures/beta"].first, RepoState::analyzed);
    EXPECT_EQ(states["fixtures/gamma"].first, RepoState::analyzed);
    EXPECT_EQ(states["fixtures/delta"], std::make_pair(RepoState::skipped, std::string("no-manifest")));
    EXPECT_EQ(states["fixtures/epsilon"], std::make_pair(RepoState::skipped, std::string("too-few-releases")));
    EXPECT_EQ(shared_run().manifest.analyzed(), 3u);

    std::vector<std::string> analyzed;
    for (const auto& s : shared_run().manifest.repos) {
        if (s.state == RepoState::analyzed) analyzed.push_back(s.host_id);
    }
    EXPECT_EQ(analyzed, testkit::fixture_oracle().at("analyzed").get<std::vector<std::string>>());
}

TEST(FixturePipeline, OutputFilesAgreeWithResults) {
    const auto& r = shared_run();
    fs::path out = r.dir / "out";
    for (const auto& name : kDeterministicOutputs) EXPECT_TRUE(fs::exists(out / name)) << name;
    EXPECT_TRUE(fs::exists(out / "run_manifest.json"));
    EXPECT_EQ(parse_csv(testkit::read_file(out / "pairs.csv")).rows.size(), r.results.pairs.size());
    EXPECT_EQ(read_ledger(out / "change_ledger.jsonl").size(), r.results.ledger.size());
    auto tools = parse_tools_table(parse_csv(testkit::read_file(out / "tools.csv")));
    ASSERT_EQ(tools.size(), r.results.tools.size());
    for (std::size_t i = 0; i < tools.size(); ++i) {
        EXPECT_EQ(tools[i].tool, r.results.tools[i].tool);
        EXPECT_EQ(tools[i].avg_fcr, r.results.tools[i].avg_fcr);
    }
    auto manifest = nlohmann::json::parse(testkit::read_file(out / "run_manifest.json"));
    EXPECT_EQ(manifest.at("repos").size(), 5u);
}

TEST(FixturePipeline, RenderedTablesMatchTheIndependentRenderer) {
    const std::string golden = testkit::read_file(testkit::data_dir() / "fixture_summary.txt");
    EXPECT_EQ(render_summary(shared_run().results.tools), golden);
    EXPECT_EQ(render_summary(testkit::read_file(shared_run().dir / "out" / "tools.csv")), golden);
}

TEST(FixturePipeline, ParallelRunsAreByteIdentical) {
    const auto& first = shared_run();
    FixtureRun second = run_fixtures(R"(, "jobs": 4)");
    for (const auto& name : kDeterministicOutputs) {
        EXPECT_EQ(testkit::read_file(first.dir / "out" / name), testkit::read_file(second.dir / "out" / name)) << name;
    }
    ASSERT_EQ(first.results.ledger.size(), second.results.ledger.size());
    for (std::size_t i = 0; i < first.results.ledger.size(); ++i) {
        EXPECT_EQ(first.results.ledger[i].id, second.results.ledger[i].id);
    }
}

TEST(FixturePipeline, ConfiguredSampleIsWritten) {
    FixtureRun r = run_fixtures(R"(, "sampling": {"k": 3, "seed": 11})");
    std::string text = testkit::read_file(r.dir / "out" / "validation_sample.txt");
    std::string expected;
    for (const auto& id : sample_for_validation(r.results.ledger, 3, 11)) expected += id + "\n";
    EXPECT_EQ(text, expected);

    FixtureRun too_many = run_fixtures(R"(, "sampling": {"k": 500, "seed": 11})");
    EXPECT_FALSE(fs::exists(too_many.dir / "out" / "validation_sample.txt"));
    EXPECT_FALSE(too_many.manifest.diagnostics.empty());
}

TEST(Cli, AnalyzeThenSummarize) {
    fs::path dir = testkit::scratch_dir("cli");
    fs::path config = testkit::write_fixture_config(dir);
    auto analyze = cli({"analyze", "--config", config.string(), "--jobs", "2", "--out", (dir / "elsewhere").string()});
    ASSERT_EQ(analyze.exit_code, 0) << analyze.err;
    EXPECT_NE(analyze.out.find("3 of 5 repositories analyzed"), std::string::npos) << analyze.out;
    EXPECT_NE(analyze.out.find("fixtures/delta\tskipped\tno-manifest"), std::string::npos);
    for (const auto& name : kDeterministicOutputs) {
        EXPECT_EQ(testkit::read_file(dir / "elsewhere" / name), testkit::read_file(shared_run().dir / "out" / name))
            << name;
    }

    auto summary = cli({"summarize", "--in", (dir / "elsewhere" / "tools.csv").string()});
    ASSERT_EQ(summary.exit_code, 0) << summary.err;
    EXPECT_EQ(summary.out, testkit::read_file(testkit::data_dir() / "fixture_summary.txt"));
}

TEST(Cli, SampleAndPrecision) {
    fs::path ledger = shared_run().dir / "out" / "change_ledger.jsonl";
    auto sample = cli({"sample", "--ledger", ledger.string(), "-k", "4", "--seed", "5"});
    ASSERT_EQ(sample.exit_code, 0) << sample.err;
    std::string expected;
    auto ids = sample_for_validation(shared_run().results.ledger, 4, 5);
    for (const auto& id : ids) expected += id + "\n";
    EXPECT_EQ(sample.out, expected);

    auto too_many = cli({"sample", "--ledger", ledger.string(), "-k", "500", "--seed", "5"});
    EXPECT_EQ(too_many.exit_code, 2);
    EXPECT_NE(too_many.err.find("error:"), std::string::npos);

    // Three classes labeled: two GUI-related, one refactoring.
    fs::path labels = testkit::scratch_dir("labels") / "labels.csv";
    testkit::write_file(labels, "record_id,level,category\n" + ids[0] + ",class,gui\n" + ids[1] + ",class,gui\n" +
                                    ids[2] + ",class,refactoring\n");
    auto prec = cli({"precision", "--ledger", ledger.string(), "--labels", labels.string()});
    ASSERT_EQ(prec.exit_code, 0) << prec.err;
    EXPECT_EQ(prec.out, "level\tmeasured\tTP\tFP\tP\nmethod\t0\t0\t0\tundefined\nclass\t3\t2\t1\t67%\n");
}

TEST(Cli, FailureExitCodes) {
    fs::path dir = testkit::scratch_dir("cli-fail");
    auto missing = cli({"analyze", "--config", (dir / "absent.json").string()});
    EXPECT_EQ(missing.exit_code, 2);
    EXPECT_NE(missing.err.find("error:"), std::string::npos);

    testkit::write_file(dir / "none.json", "{\"corpus\": {\"source\": \"fixture\", \"fixture_dir\": \"" +
                                               (testkit::fixture_dir() / "index").string() +
                                               "\", \"query\": \"no-such-topic\"}, \"cache_dir\": \"c\", "
                                               "\"output_dir\": \"o\"}");
    auto empty = cli({"analyze", "--config", (dir / "none.json").string()});
    EXPECT_EQ(empty.exit_code, 1) << empty.err;
    EXPECT_NE(empty.out.find("0 of 0 repositories analyzed"), std::string::npos) << empty.out;

    auto usage = cli({"sample"});
    EXPECT_NE(usage.exit_code, 0);
}

TEST(RandomHistories, InvariantsHold) {
    auto report = testkit::run_invariant_suite(20240611, 80);
    EXPECT_EQ(report.histories, 80u);
    EXPECT_GT(report.pairs, 200u);
    EXPECT_GT(report.projects, 40u);
    for (const auto& v : report.violations) ADD_FAILURE() << v;
}

TEST(RandomHistories, CheckerReportsBrokenAnalyses) {
    std::mt19937_64 rng(3);
    testkit::RandomHistory history;
    do {
        history = testkit::random_history(rng);
    } while (history.releases.size() < 3);
    testkit::InMemoryHistory source(history);
    const auto tools = builtin_tools();
    auto analysis = analyze_history("r/x", history.releases, source, tools, {});

    testkit::InvariantReport clean;
    testkit::check_history(history, analysis, {}, clean);
    EXPECT_TRUE(clean.violations.empty());

    auto broken = analysis;
    broken.tools[0].pairs[0].mcmm = broken.tools[0].pairs[0].mc + 1;
    broken.tools[0].pairs[1].mcr = 1.5;
    if (broken.tools[0].report) broken.tools[0].report->avg_mcr = 0.123;
    testkit::InvariantReport bad;
    testkit::check_history(history, broken, {}, bad);
    EXPECT_GE(bad.violations.size(), 2u);
}

TEST(RandomHistories, RepeatedAnalysisIsIdentical) {
    std::mt19937_64 rng(77);
    const auto tools = builtin_tools();
    for (int i = 0; i < 20; ++i) {
        auto history = testkit::random_history(rng);
        testkit::InMemoryHistory source(history);
        auto a = analyze_history("r/x", history.releases, source, tools, {});
        auto b = analyze_history("r/x", history.releases, source, tools, {});
        ASSERT_EQ(a.ledger.size(), b.ledger.size());
        for (std::size_t j = 0; j < a.ledger.size(); ++j) EXPECT_EQ(to_json_line(a.ledger[j]), to_json_line(b.ledger[j]));
        ASSERT_EQ(a.tools.size(), tools.size());
        for (const auto& t : a.tools) EXPECT_EQ(t.pairs.size() + 1, history.releases.size());
    }
}
