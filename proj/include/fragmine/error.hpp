#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fragmine {

enum class Errc {
    invalid_query,
    api_unreachable,
    rate_limited,
    malformed_response,
    clone_failed,
    cache_dir_unwritable,
    repo_unreadable,
    no_releases,
    unknown_commit,
    unbalanced_braces,
    undecodable_source,
    inconsistent_inputs,
    empty_series,
    empty_reports,
    unknown_record_id,
    invalid_category,
    insufficient_records,
    config_invalid,
    output_unwritable,
    missing_input,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

    /// Transient failures the caller may retry after backing off.
    bool retryable() const noexcept {
        return code_ == Errc::api_unreachable || code_ == Errc::rate_limited;
    }

private:
    Errc code_;
};

}  // namespace fragmine
