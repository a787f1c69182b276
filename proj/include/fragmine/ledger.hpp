#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragmine/change_classifier.hpp"
#include "fragmine/metrics.hpp"

namespace fragmine {

// 64-bit FNV-1a over NUL-separated parts, as 16 lowercase hex digits.
std::string stable_hash(std::initializer_list<std::string_view> parts);

struct LedgerMethod {
    std::string id;
    std::string signature;
    MethodChangeKind kind;
};

/// One test file's change across one release pair: the audit trail used
/// when labeling changes by hand.
struct LedgerRecord {
    std::string id;  // stable_hash(repo, from, to, path)
    std::string repo;
    std::string from;
    std::string to;
    std::string path;
    std::vector<std::string> tools;
    ChangeCategory category = ChangeCategory::unchanged;
    bool file_changed = false;
    bool class_deleted = false;
    std::size_t modified = 0, added = 0, deleted = 0;
    std::vector<LedgerMethod> methods;  // every tracked method change except matched-unchanged
};

LedgerRecord make_ledger_record(std::string_view repo, std::string_view from, std::string_view to,
                                const ClassChangeRecord& change);

std::string to_json_line(const LedgerRecord& record);
LedgerRecord parse_json_line(std::string_view line);  // throws Error{malformed_response}

void write_ledger(std::ostream& out, std::span<const LedgerRecord> records);
std::vector<LedgerRecord> read_ledger(const std::filesystem::path& file);  // throws Error{missing_input}

// Uniform sample of k fragile-class record ids without replacement,
// reproducible for a given seed. Throws Error{insufficient_records}.
std::vector<std::string> sample_for_validation(std::span<const LedgerRecord> ledger, std::size_t k,
                                               std::uint64_t seed);

// CSV with header record_id,level,category; level in {class,method},
// category in {refactoring,non-gui,gui}. Throws Error{invalid_category}.
std::vector<Label> read_labels(std::istream& in);

// Checks every label against the ledger (Error{unknown_record_id}) and
// computes precision per level.
PrecisionResult precision(std::span<const LedgerRecord> ledger, std::span<const Label> labels);

}  // namespace fragmine
