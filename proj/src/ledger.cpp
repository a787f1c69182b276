#include "fragmine/ledger.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

#include "fragmine/error.hpp"

namespace fragmine {
namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
    auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

template <typename Enum, std::size_t N>
Enum enum_from(std::string_view text, const Enum (&values)[N]) {
    for (Enum v : values) {
        if (to_string(v) == text) return v;
    }
    throw Error(Errc::malformed_response, "unknown ledger value " + std::string(text));
}

constexpr ChangeCategory kCategories[] = {
    ChangeCategory::unchanged,   ChangeCategory::non_significant, ChangeCategory::add_only,
    ChangeCategory::remove_only, ChangeCategory::add_remove_only, ChangeCategory::fragile,
};
constexpr MethodChangeKind kKinds[] = {
    MethodChangeKind::matched_unchanged,
    MethodChangeKind::matched_modified,
    MethodChangeKind::added,
    MethodChangeKind::deleted,
};

// Bounded uniform integer in [0, bound) by rejection; unlike
// std::uniform_int_distribution the sequence is identical on every library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace

std::string stable_hash(std::initializer_list<std::string_view> parts) {
    std::uint64_t h = 14695981039346656037ull;
    bool first = true;
    for (std::string_view part : parts) {
        if (!first) {
            h ^= 0u;
            h *= 1099511628211ull;
        }
        first = false;
        for (unsigned char c : part) {
            h ^= c;
            h *= 1099511628211ull;
        }
    }
    return fmt::format("{:016x}", h);
}

LedgerRecord make_ledger_record(std::string_view repo, std::string_view from, std::string_view to,
                                const ClassChangeRecord& change) {
    LedgerRecord r;
    r.id = stable_hash({repo, from, to, change.path});
    r.repo = repo;
    r.from = from;
    r.to = to;
    r.path = change.path;
    r.category = change.category;
    r.file_changed = change.file_changed;
    r.class_deleted = change.class_deleted;
    r.modified = change.modified;
    r.added = change.added;
    r.deleted = change.deleted;
    for (const auto& c : change.method_changes) {
        if (c.kind == MethodChangeKind::matched_unchanged) continue;
        std::string sig = c.any().signature_key();
        r.methods.push_back({stable_hash({repo, from, to, change.path, sig}), sig, c.kind});
    }
    return r;
}

std::string to_json_line(const LedgerRecord& r) {
    json methods = json::array();
    for (const auto& m : r.methods) {
        methods.push_back({{"id", m.id}, {"signature", m.signature}, {"kind", to_string(m.kind)}});
    }
    json j = {
        {"id", r.id},
        {"repo", r.repo},
        {"from", r.from},
        {"to", r.to},
        {"path", r.path},
        {"tools", r.tools},
        {"category", to_string(r.category)},
        {"file_changed", r.file_changed},
        {"class_deleted", r.class_deleted},
        {"modified_methods", r.modified},
        {"added_methods", r.added},
        {"deleted_methods", r.deleted},
        {"methods", methods},
    };
    return j.dump();
}

LedgerRecord parse_json_line(std::string_view line) {
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::malformed_response, "ledger line is not JSON");
    try {
        LedgerRecord r;
        r.id = j.at("id").get<std::string>();
        r.repo = j.at("repo").get<std::string>();
        r.from = j.at("from").get<std::string>();
        r.to = j.at("to").get<std::string>();
        r.path = j.at("path").get<std::string>();
        r.tools = j.at("tools").get<std::vector<std::string>>();
        r.category = enum_from(j.at("category").get<std::string>(), kCategories);
        r.file_changed = j.at("file_changed").get<bool>();
        r.class_deleted = j.at("class_deleted").get<bool>();
        r.modified = j.at("modified_methods").get<std::size_t>();
        r.added = j.at("added_methods").get<std::size_t>();
        r.deleted = j.at("deleted_methods").get<std::size_t>();
        for (const auto& m : j.at("methods")) {
            r.methods.push_back({m.at("id").get<std::string>(), m.at("signature").get<std::string>(),
                                 enum_from(m.at("kind").get<std::string>(), kKinds)});
        }
        return r;
    } catch (const json::exception& e) {
        throw Error(Errc::malformed_response, e.what());
    }
}

void write_ledger(std::ostream& out, std::span<const LedgerRecord> records) {
    for (const auto& r : records) out << to_json_line(r) << '\n';
}

std::vector<LedgerRecord> read_ledger(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error(Errc::missing_input, file.string());
    std::vector<LedgerRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) records.push_back(parse_json_line(line));
    }
    return records;
}

std::vector<std::string> sample_for_validation(std::span<const LedgerRecord> ledger, std::size_t k,
                                               std::uint64_t seed) {
    std::set<std::string> unique;
    for (const auto& r : ledger) {
        if (r.category == ChangeCategory::fragile) unique.insert(r.id);
    }
    std::vector<std::string> eligible(unique.begin(), unique.end());
    if (eligible.empty() || k > eligible.size()) {
        throw Error(Errc::insufficient_records,
                    fmt::format("{} requested, {} fragile records available", k, eligible.size()));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, eligible.size() - i));
        std::swap(eligible[i], eligible[j]);
    }
    eligible.resize(k);
    return eligible;
}

std::vector<Label> read_labels(std::istream& in) {
    std::vector<Label> labels;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            cells.push_back(trim(std::string_view(line).substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (header) {
            header = false;
            if (!cells.empty() && cells[0] == "record_id") continue;
        }
        if (cells.size() != 3) throw Error(Errc::invalid_category, "label row needs 3 columns: " + line);
        Label label;
        label.record_id = cells[0];
        if (cells[1] == "class") {
            label.level = LabelLevel::class_level;
        } else if (cells[1] == "method") {
            label.level = LabelLevel::method_level;
        } else {
            throw Error(Errc::invalid_category, "level " + cells[1]);
        }
        if (cells[2] == "gui") {
            label.category = LabelCategory::gui;
        } else if (cells[2] == "non-gui") {
            label.category = LabelCategory::non_gui;
        } else if (cells[2] == "refactoring") {
            label.category = LabelCategory::refactoring;
        } else {
            throw Error(Errc::invalid_category, "category " + cells[2]);
        }
        labels.push_back(std::move(label));
    }
    return labels;
}

PrecisionResult precision(std::span<const LedgerRecord> ledger, std::span<const Label> labels) {
    std::set<std::string> class_ids, method_ids;
    for (const auto& r : ledger) {
        class_ids.insert(r.id);
        for (const auto& m : r.methods) method_ids.insert(m.id);
    }
    for (const auto& label : labels) {
        const auto& ids = label.level == LabelLevel::class_level ? class_ids : method_ids;
        if (!ids.contains(label.record_id)) throw Error(Errc::unknown_record_id, label.record_id);
    }
    return precision(labels);
}

}  // namespace fragmine
