// fragmine command line: analyze a corpus, render summaries, draw a
// validation sample and score hand labels.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fragmine/error.hpp"
#include "fragmine/ledger.hpp"
#include "fragmine/pipeline.hpp"
#include "fragmine/report.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw fragmine::Error(fragmine::Errc::missing_input, path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string percent(const fragmine::Ratio& r) {
    if (!r) return "undefined";
    return std::to_string(static_cast<int>(*r * 100.0 + 0.5)) + "%";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diffusion, evolution and fragility metrics of Android GUI test suites"};
    app.require_subcommand(1);

    std::string config_path;
    std::size_t jobs = 0;
    std::string out_dir;
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline from a config file");
    analyze->add_option("--config", config_path, "Run configuration (JSON)")->required();
    analyze->add_option("--jobs", jobs, "Parallel repository workers");
    analyze->add_option("--out", out_dir, "Output directory (overrides the config)");

    std::string tools_csv;
    auto* summarize = app.add_subcommand("summarize", "Render tools.csv as text tables");
    summarize->add_option("--in", tools_csv, "tools.csv path")->required();

    std::string ledger_path;
    std::size_t k = 30;
    std::uint64_t seed = 1;
    auto* sample = app.add_subcommand("sample", "Draw fragile-class records for manual validation");
    sample->add_option("--ledger", ledger_path, "change_ledger.jsonl")->required();
    sample->add_option("-k", k, "Sample size");
    sample->add_option("--seed", seed, "Random seed");

    std::string labels_path;
    auto* prec = app.add_subcommand("precision", "Precision of the fragility proxy from labels");
    prec->add_option("--ledger", ledger_path, "change_ledger.jsonl")->required();
    prec->add_option("--labels", labels_path, "Label CSV (record_id,level,category)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            fragmine::RunConfig config = fragmine::load_config(config_path);
            if (jobs > 0) config.jobs = jobs;
            if (!out_dir.empty()) config.output_dir = out_dir;
            fragmine::RunManifest manifest = fragmine::run(config);
            for (const auto& r : manifest.repos) {
                std::cout << r.host_id << "\t" << fragmine::to_string(r.state);
                if (!r.detail.empty()) std::cout << "\t" << r.detail;
                std::cout << "\n";
            }
            std::cout << manifest.analyzed() << " of " << manifest.repos.size() << " repositories analyzed; outputs in "
                      << config.output_dir.string() << "\n";
            return manifest.analyzed() > 0 ? 0 : 1;
        }
        if (summarize->parsed()) {
            std::cout << fragmine::render_summary(read_file(tools_csv));
            return 0;
        }
        if (sample->parsed()) {
            auto ledger = fragmine::read_ledger(ledger_path);
            for (const auto& id : fragmine::sample_for_validation(ledger, k, seed)) std::cout << id << "\n";
            return 0;
        }
        if (prec->parsed()) {
            auto ledger = fragmine::read_ledger(ledger_path);
            std::ifstream in(labels_path);
            if (!in) throw fragmine::Error(fragmine::Errc::missing_input, labels_path);
            auto labels = fragmine::read_labels(in);
            auto result = fragmine::precision(ledger, labels);
            std::cout << "level\tmeasured\tTP\tFP\tP\n";
            std::cout << "method\t" << result.methods.tp + result.methods.fp << "\t" << result.methods.tp << "\t"
                      << result.methods.fp << "\t" << percent(result.methods.p) << "\n";
            std::cout << "class\t" << result.classes.tp + result.classes.fp << "\t" << result.classes.tp << "\t"
                      << result.classes.fp << "\t" << percent(result.classes.p) << "\n";
            return 0;
        }
    } catch (const fragmine::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
