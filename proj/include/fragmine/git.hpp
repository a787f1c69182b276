#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/error.hpp"

namespace fragmine {

struct ProcessResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

// Runs argv[0] (PATH lookup) without a shell, feeding `input` on stdin and
// capturing stdout/stderr.
ProcessResult run_process(const std::vector<std::string>& argv, std::string_view input = {});

/// Thin wrapper over the git CLI bound to one repository directory.
class GitRepository {
public:
    explicit GitRepository(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const noexcept { return dir_; }

    ProcessResult run(const std::vector<std::string>& args, std::string_view input = {}) const;

    // Like run() but throws Error{failure} on a non-zero exit.
    std::string output(const std::vector<std::string>& args, Errc failure, std::string_view input = {}) const;

    bool is_valid() const;

private:
    std::filesystem::path dir_;
};

}  // namespace fragmine
