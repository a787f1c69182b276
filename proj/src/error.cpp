#include "fragmine/error.hpp"

namespace fragmine {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::invalid_query: return "invalid-query";
        case Errc::api_unreachable: return "api-unreachable";
        case Errc::rate_limited: return "rate-limited";
        case Errc::malformed_response: return "malformed-response";
        case Errc::clone_failed: return "clone-failed";
        case Errc::cache_dir_unwritable: return "cache-dir-unwritable";
        case Errc::repo_unreadable: return "repo-unreadable";
        case Errc::no_releases: return "no-releases";
        case Errc::unknown_commit: return "unknown-commit";
        case Errc::unbalanced_braces: return "unbalanced-braces";
        case Errc::undecodable_source: return "undecodable-source";
        case Errc::inconsistent_inputs: return "inconsistent-inputs";
        case Errc::empty_series: return "empty-series";
        case Errc::empty_reports: return "empty-reports";
        case Errc::unknown_record_id: return "unknown-record-id";
        case Errc::invalid_category: return "invalid-category";
        case Errc::insufficient_records: return "insufficient-records";
        case Errc::config_invalid: return "config-invalid";
        case Errc::output_unwritable: return "output-unwritable";
        case Errc::missing_input: return "missing-input";
    }
    return "unknown";
}

}  // namespace fragmine
