#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace fragmine {

struct LineChurn {
    std::uint64_t added = 0;
    std::uint64_t deleted = 0;

    std::uint64_t total() const noexcept { return added + deleted; }
    bool operator==(const LineChurn&) const = default;
};

// Lines keep their terminator, so "x" and "x\n" are different lines, the
// way git compares a final line that lacks a newline.
std::vector<std::string_view> split_lines(std::string_view text);

// Physical line count: newline count plus one for an unterminated last line.
std::uint64_t count_lines(std::string_view text);

// Same heuristic as git: a NUL byte within the first 8000 bytes.
bool looks_binary(std::string_view content);

// Added/deleted line counts of a minimal line diff (Myers O(ND)); the sum
// equals n + m - 2 * LCS(before, after).
LineChurn line_churn(std::string_view before, std::string_view after);

}  // namespace fragmine
