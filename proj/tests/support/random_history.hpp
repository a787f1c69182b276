#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fragmine/history.hpp"
#include "fragmine/pipeline.hpp"

namespace fragmine::testkit {

// A synthetic project history held in memory: release i has tree trees[i].
struct RandomHistory {
    std::vector<ReleaseRef> releases;
    std::vector<FileTree> trees;
};

// Draws a history of 2..7 releases in which Espresso and plain JUnit test
// classes are created, edited (bodies, imports, constructors, formatting),
// extended, trimmed, renamed, moved and deleted at random, next to
// production files that churn independently.
RandomHistory random_history(std::mt19937_64& rng);

class InMemoryHistory final : public HistorySource {
public:
    explicit InMemoryHistory(const RandomHistory& history) : history_(&history) {}
    FileTree tree(const ReleaseRef& release) const override { return history_->trees.at(release.order_index); }

private:
    const RandomHistory* history_;
};

}  // namespace fragmine::testkit
