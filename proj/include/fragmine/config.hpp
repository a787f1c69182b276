#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/corpus.hpp"
#include "fragmine/test_detector.hpp"

namespace fragmine {

// Environment variable holding the hosting-API token; never read from files.
inline constexpr const char* kTokenEnv = "FRAGMINE_HOSTING_TOKEN";

enum class CorpusKind { fixture, hosting, list };

struct CorpusSource {
    CorpusKind kind = CorpusKind::fixture;
    std::filesystem::path fixture_dir;
    std::string query = "Android";
    int page_limit = 1;
    std::string api_base = "https://api.github.com";
    std::vector<RepoRef> repos;  // explicit list
};

struct RunConfig {
    CorpusSource corpus;
    std::filesystem::path cache_dir;
    std::filesystem::path output_dir;
    std::vector<ToolSpec> tools = builtin_tools();
    std::vector<std::string> project_scope = {".java"};
    CorpusFilter filter;
    std::size_t sample_k = 0;  // 0 disables writing a validation sample
    std::uint64_t sample_seed = 1;
    bool annotated_only = false;
    bool exclude_new_files = false;
    bool case_sensitive_keywords = false;
    std::size_t jobs = 1;
    std::string source_text;  // raw config, hashed into the run manifest
};

/// Parses the JSON run configuration; relative paths resolve against
/// `base_dir`. Throws Error{config_invalid}.
///
///   {
///     "corpus": {"source": "fixture", "fixture_dir": "index", "query": "Android"},
///     "cache_dir": "cache",
///     "output_dir": "out",
///     "tools": [{"name": "Espresso", "keywords": ["espresso"]}],
///     "project_scope": [".java"],
///     "filters": {"min_releases": 2, "require_manifest": true},
///     "sampling": {"k": 30, "seed": 7},
///     "flags": {"annotated_only": false, "exclude_new_files": false,
///               "case_sensitive_keywords": false},
///     "jobs": 4
///   }
///
/// "source" may also be "hosting" (with "query", "page_limit", "api_base")
/// or "list" (with "repos": [{"id": ..., "clone_url": ...}]).
RunConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

RunConfig load_config(const std::filesystem::path& file);

}  // namespace fragmine
