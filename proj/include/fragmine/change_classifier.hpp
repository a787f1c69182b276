#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/method_extractor.hpp"

namespace fragmine {

enum class MethodChangeKind { matched_unchanged, matched_modified, added, deleted };

std::string_view to_string(MethodChangeKind kind) noexcept;

struct MethodChange {
    MethodChangeKind kind;
    std::optional<MethodRecord> prev;
    std::optional<MethodRecord> next;

    const MethodRecord& any() const { return prev ? *prev : *next; }
};

enum class ChangeCategory { unchanged, non_significant, add_only, remove_only, add_remove_only, fragile };

std::string_view to_string(ChangeCategory category) noexcept;

/// How one test class changed across a release pair.
struct ClassChangeRecord {
    std::string path;
    ChangeCategory category = ChangeCategory::unchanged;
    std::vector<MethodChange> method_changes;
    std::size_t modified = 0;  // matched-modified test methods (MM contribution)
    std::size_t added = 0;
    std::size_t deleted = 0;
    std::size_t methods_prev = 0;  // test methods before / after
    std::size_t methods_next = 0;
    bool file_changed = false;
    bool class_deleted = false;  // file gone in the later release

    // Modified-class (MC) and fragile-class (MCMM) contributions.
    std::size_t mc() const noexcept { return file_changed && !class_deleted ? 1 : 0; }
    std::size_t mcmm() const noexcept { return category == ChangeCategory::fragile ? 1 : 0; }
};

// Pairs test methods by signature (owner, name, parameter types). A matched
// pair is modified iff its normalized bodies differ; a renamed method shows
// up as one deletion and one addition. Methods outside the test-method
// notion (constructors, and non-@Test methods under annotated_only) are not
// tracked, so their edits never count as fragility.
std::vector<MethodChange> match_methods(const ClassSnapshot& prev, const ClassSnapshot& next,
                                        MethodCountOptions options = {});

// `next` is absent when the class was deleted. A deleted class is recorded
// as remove-only (or non-significant when it had no test methods) and never
// counts as modified.
ClassChangeRecord classify_class(const ClassSnapshot& prev, const std::optional<ClassSnapshot>& next,
                                 bool file_changed, MethodCountOptions options = {});

}  // namespace fragmine
