#include "fragmine/line_diff.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace fragmine {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
        lines.push_back(text.substr(start, end - start));
        start = end;
    }
    return lines;
}

std::uint64_t count_lines(std::string_view text) {
    auto n = static_cast<std::uint64_t>(std::count(text.begin(), text.end(), '\n'));
    if (!text.empty() && text.back() != '\n') ++n;
    return n;
}

bool looks_binary(std::string_view content) {
    return content.substr(0, 8000).find('\0') != std::string_view::npos;
}

namespace {

// Length of the shortest edit script between two integer sequences.
std::uint64_t edit_distance(const std::vector<int>& a, const std::vector<int>& b) {
    const long n = static_cast<long>(a.size());
    const long m = static_cast<long>(b.size());
    const long max = n + m;
    if (max == 0) return 0;
    std::vector<long> v(2 * static_cast<std::size_t>(max) + 2, 0);
    const long offset = max;
    for (long d = 0; d <= max; ++d) {
        for (long k = -d; k <= d; k += 2) {
            long x;
            if (k == -d || (k != d && v[offset + k - 1] < v[offset + k + 1])) {
                x = v[offset + k + 1];
            } else {
                x = v[offset + k - 1] + 1;
            }
            long y = x - k;
            while (x < n && y < m && a[x] == b[y]) {
                ++x;
                ++y;
            }
            v[offset + k] = x;
            if (x >= n && y >= m) return static_cast<std::uint64_t>(d);
        }
    }
    return static_cast<std::uint64_t>(max);
}

}  // namespace

LineChurn line_churn(std::string_view before, std::string_view after) {
    if (before == after) return {};
    auto old_lines = split_lines(before);
    auto new_lines = split_lines(after);

    // Trim the common prefix and suffix before running the O(ND) search.
    std::size_t prefix = 0;
    while (prefix < old_lines.size() && prefix < new_lines.size() && old_lines[prefix] == new_lines[prefix]) {
        ++prefix;
    }
    std::size_t suffix = 0;
    while (suffix < old_lines.size() - prefix && suffix < new_lines.size() - prefix &&
           old_lines[old_lines.size() - 1 - suffix] == new_lines[new_lines.size() - 1 - suffix]) {
        ++suffix;
    }

    const std::uint64_t n = old_lines.size() - prefix - suffix;
    const std::uint64_t m = new_lines.size() - prefix - suffix;

    // Lines present on one side only can never be part of the LCS; dropping
    // them leaves the LCS length unchanged and shrinks the search.
    std::unordered_map<std::string_view, std::pair<int, unsigned>> ids;
    for (std::size_t i = prefix; i < old_lines.size() - suffix; ++i) {
        auto& e = ids.try_emplace(old_lines[i], static_cast<int>(ids.size()), 0u).first->second;
        e.second |= 1u;
    }
    for (std::size_t i = prefix; i < new_lines.size() - suffix; ++i) {
        auto& e = ids.try_emplace(new_lines[i], static_cast<int>(ids.size()), 0u).first->second;
        e.second |= 2u;
    }
    std::vector<int> a, b;
    for (std::size_t i = prefix; i < old_lines.size() - suffix; ++i) {
        const auto& e = ids.at(old_lines[i]);
        if (e.second == 3u) a.push_back(e.first);
    }
    for (std::size_t i = prefix; i < new_lines.size() - suffix; ++i) {
        const auto& e = ids.at(new_lines[i]);
        if (e.second == 3u) b.push_back(e.first);
    }

    const std::uint64_t d = edit_distance(a, b);
    const std::uint64_t lcs = (a.size() + b.size() - d) / 2;
    return {m - lcs, n - lcs};
}

}  // namespace fragmine
