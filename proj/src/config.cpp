#include "fragmine/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fragmine/error.hpp"

namespace fs = std::filesystem;

namespace fragmine {
namespace {

using nlohmann::json;

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    return obj.at(key).get<T>();
}

}  // namespace

RunConfig parse_config(std::string_view json_text, const fs::path& base_dir) {
    json j = json::parse(json_text, nullptr, false, true);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::config_invalid, "config is not a JSON object");

    RunConfig cfg;
    cfg.source_text = std::string(json_text);
    try {
        const json corpus = j.value("corpus", json::object());
        const std::string source = get_or<std::string>(corpus, "source", "fixture");
        cfg.corpus.query = get_or<std::string>(corpus, "query", cfg.corpus.query);
        cfg.corpus.page_limit = get_or<int>(corpus, "page_limit", cfg.corpus.page_limit);
        cfg.corpus.api_base = get_or<std::string>(corpus, "api_base", cfg.corpus.api_base);
        if (source == "fixture") {
            cfg.corpus.kind = CorpusKind::fixture;
            if (!corpus.contains("fixture_dir")) throw Error(Errc::config_invalid, "corpus.fixture_dir missing");
            cfg.corpus.fixture_dir = resolve(base_dir, corpus.at("fixture_dir").get<std::string>());
        } else if (source == "hosting") {
            cfg.corpus.kind = CorpusKind::hosting;
        } else if (source == "list") {
            cfg.corpus.kind = CorpusKind::list;
            for (const auto& r : corpus.at("repos")) {
                std::string url = r.at("clone_url").get<std::string>();
                if (url.find("://") == std::string::npos && fs::path(url).is_relative()) {
                    url = resolve(base_dir, url).string();
                }
                cfg.corpus.repos.push_back({r.at("id").get<std::string>(), url, std::nullopt});
            }
        } else {
            throw Error(Errc::config_invalid, "unknown corpus source " + source);
        }

        if (!j.contains("cache_dir") || !j.contains("output_dir")) {
            throw Error(Errc::config_invalid, "cache_dir and output_dir are required");
        }
        cfg.cache_dir = resolve(base_dir, j.at("cache_dir").get<std::string>());
        cfg.output_dir = resolve(base_dir, j.at("output_dir").get<std::string>());

        if (j.contains("tools")) {
            cfg.tools.clear();
            for (const auto& t : j.at("tools")) {
                cfg.tools.push_back({t.at("name").get<std::string>(), t.at("keywords").get<std::vector<std::string>>(),
                                     get_or<bool>(t, "baseline", false)});
            }
        }
        validate_registry(cfg.tools);

        cfg.project_scope = get_or<std::vector<std::string>>(j, "project_scope", cfg.project_scope);
        if (cfg.project_scope.empty()) throw Error(Errc::config_invalid, "project_scope is empty");

        const json filters = j.value("filters", json::object());
        cfg.filter.min_releases = get_or<std::size_t>(filters, "min_releases", cfg.filter.min_releases);
        cfg.filter.require_manifest = get_or<bool>(filters, "require_manifest", cfg.filter.require_manifest);
        if (cfg.filter.min_releases < 2) throw Error(Errc::config_invalid, "filters.min_releases must be >= 2");

        const json sampling = j.value("sampling", json::object());
        cfg.sample_k = get_or<std::size_t>(sampling, "k", cfg.sample_k);
        cfg.sample_seed = get_or<std::uint64_t>(sampling, "seed", cfg.sample_seed);

        const json flags = j.value("flags", json::object());
        cfg.annotated_only = get_or<bool>(flags, "annotated_only", false);
        cfg.exclude_new_files = get_or<bool>(flags, "exclude_new_files", false);
        cfg.case_sensitive_keywords = get_or<bool>(flags, "case_sensitive_keywords", false);

        cfg.jobs = get_or<std::size_t>(j, "jobs", 1);
        if (cfg.jobs == 0) cfg.jobs = 1;
    } catch (const json::exception& e) {
        throw Error(Errc::config_invalid, e.what());
    }
    return cfg;
}

RunConfig load_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::config_invalid, "cannot read " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), fs::absolute(file).parent_path());
}

}  // namespace fragmine
