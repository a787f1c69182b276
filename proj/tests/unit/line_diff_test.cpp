#include <random>

#include <gtest/gtest.h>

#include "fragmine/line_diff.hpp"

using namespace fragmine;

namespace {

// Quadratic LCS table over lines, the textbook definition of a minimal diff.
std::size_t lcs_length(const std::vector<std::string_view>& a, const std::vector<std::string_view>& b) {
    std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1 : std::max(dp[i - 1][j], dp[i][j - 1]);
        }
    }
    return dp[a.size()][b.size()];
}

std::string random_text(std::mt19937_64& rng, int max_lines) {
    static const char* const kLines[] = {"a\n", "b\n", "c\n", "{\n", "}\n", "x();\n", "\n", "return;\n"};
    std::uniform_int_distribution<int> len(0, max_lines), pick(0, 7);
    std::string out;
    for (int n = len(rng); n > 0; --n) out += kLines[pick(rng)];
    if (!out.empty() && std::bernoulli_distribution(0.2)(rng)) out.pop_back();  // unterminated last line
    return out;
}

}  // namespace

TEST(LineDiff, SplitKeepsTerminators) {
    auto lines = split_lines("a\nb\n\nc");
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "a\n");
    EXPECT_EQ(lines[2], "\n");
    EXPECT_EQ(lines[3], "c");
    EXPECT_TRUE(split_lines("").empty());
}

TEST(LineDiff, CountsPhysicalLines) {
    EXPECT_EQ(count_lines(""), 0u);
    EXPECT_EQ(count_lines("a"), 1u);
    EXPECT_EQ(count_lines("a\n"), 1u);
    EXPECT_EQ(count_lines("a\nb"), 2u);
    EXPECT_EQ(count_lines("\n\n"), 2u);
}

TEST(LineDiff, InPlaceEditIsOneDeletionAndOneAddition) {
    EXPECT_EQ(line_churn("a\nb\nc\n", "a\nB\nc\n"), (LineChurn{1, 1}));
}

TEST(LineDiff, AddedAndDeletedFiles) {
    EXPECT_EQ(line_churn("", "a\nb\n"), (LineChurn{2, 0}));
    EXPECT_EQ(line_churn("a\nb\nc\n", ""), (LineChurn{0, 3}));
    EXPECT_EQ(line_churn("same\n", "same\n").total(), 0u);
}

TEST(LineDiff, MissingFinalNewlineIsAChange) {
    EXPECT_EQ(line_churn("a\nb", "a\nb\n"), (LineChurn{1, 1}));
}

TEST(LineDiff, BinaryDetection) {
    EXPECT_TRUE(looks_binary(std::string("ab\0c", 4)));
    EXPECT_FALSE(looks_binary("plain text\n"));
    std::string late(9000, 'x');
    late[8500] = '\0';
    EXPECT_FALSE(looks_binary(late));
}

TEST(LineDiff, MatchesQuadraticLcsOracle) {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 500; ++round) {
        std::string a = random_text(rng, 40), b = random_text(rng, 40);
        auto la = split_lines(a), lb = split_lines(b);
        std::size_t lcs = lcs_length(la, lb);
        LineChurn c = line_churn(a, b);
        ASSERT_EQ(c.deleted, la.size() - lcs) << "round " << round;
        ASSERT_EQ(c.added, lb.size() - lcs) << "round " << round;
    }
}

TEST(LineDiff, SymmetricUnderReversal) {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        std::string a = random_text(rng, 30), b = random_text(rng, 30);
        LineChurn fwd = line_churn(a, b), back = line_churn(b, a);
        ASSERT_EQ(fwd.added, back.deleted);
        ASSERT_EQ(fwd.deleted, back.added);
    }
}

TEST(LineDiff, LargeInputsStayFast) {
    std::string a, b;
    for (int i = 0; i < 20000; ++i) {
        a += "line " + std::to_string(i) + "\n";
        b += "line " + std::to_string(i % 7 == 0 ? -i : i) + "\n";
    }
    LineChurn c = line_churn(a, b);
    EXPECT_EQ(c.added, 2857u);
    EXPECT_EQ(c.deleted, 2857u);
}
