#include "fragmine/change_classifier.hpp"

#include <deque>
#include <map>

namespace fragmine {

std::string_view to_string(MethodChangeKind kind) noexcept {
    switch (kind) {
        case MethodChangeKind::matched_unchanged: return "matched-unchanged";
        case MethodChangeKind::matched_modified: return "matched-modified";
        case MethodChangeKind::added: return "added";
        case MethodChangeKind::deleted: return "deleted";
    }
    return "matched-unchanged";
}

std::string_view to_string(ChangeCategory category) noexcept {
    switch (category) {
        case ChangeCategory::unchanged: return "unchanged";
        case ChangeCategory::non_significant: return "non-significant";
        case ChangeCategory::add_only: return "add-only";
        case ChangeCategory::remove_only: return "remove-only";
        case ChangeCategory::add_remove_only: return "add-remove-only";
        case ChangeCategory::fragile: return "fragile";
    }
    return "unchanged";
}

std::vector<MethodChange> match_methods(const ClassSnapshot& prev, const ClassSnapshot& next,
                                        MethodCountOptions options) {
    // Duplicate keys (only in malformed code) pair up in source order.
    std::map<std::string, std::deque<const MethodRecord*>> pending;
    for (const auto& m : next.methods) {
        if (is_test_method(m, options)) pending[m.signature_key()].push_back(&m);
    }

    std::vector<MethodChange> changes;
    std::map<const MethodRecord*, bool> consumed;
    for (const auto& m : prev.methods) {
        if (!is_test_method(m, options)) continue;
        auto it = pending.find(m.signature_key());
        if (it == pending.end() || it->second.empty()) {
            changes.push_back({MethodChangeKind::deleted, m, std::nullopt});
            continue;
        }
        const MethodRecord* other = it->second.front();
        it->second.pop_front();
        consumed[other] = true;
        auto kind = m.normalized_body == other->normalized_body ? MethodChangeKind::matched_unchanged
                                                                : MethodChangeKind::matched_modified;
        changes.push_back({kind, m, *other});
    }
    for (const auto& m : next.methods) {
        if (is_test_method(m, options) && !consumed.contains(&m)) {
            changes.push_back({MethodChangeKind::added, std::nullopt, m});
        }
    }
    return changes;
}

ClassChangeRecord classify_class(const ClassSnapshot& prev, const std::optional<ClassSnapshot>& next,
                                 bool file_changed, MethodCountOptions options) {
    ClassChangeRecord rec;
    rec.path = prev.path;
    rec.methods_prev = count_test_methods(prev, options);
    rec.class_deleted = !next.has_value();
    rec.file_changed = file_changed || rec.class_deleted;

    if (rec.class_deleted) {
        for (const auto& m : prev.methods) {
            if (is_test_method(m, options)) rec.method_changes.push_back({MethodChangeKind::deleted, m, std::nullopt});
        }
        rec.deleted = rec.method_changes.size();
        rec.category = rec.deleted ? ChangeCategory::remove_only : ChangeCategory::non_significant;
        return rec;
    }

    rec.methods_next = count_test_methods(*next, options);
    if (!rec.file_changed) {
        rec.category = ChangeCategory::unchanged;
        return rec;
    }

    rec.method_changes = match_methods(prev, *next, options);
    for (const auto& c : rec.method_changes) {
        switch (c.kind) {
            case MethodChangeKind::matched_modified: ++rec.modified; break;
            case MethodChangeKind::added: ++rec.added; break;
            case MethodChangeKind::deleted: ++rec.deleted; break;
            case MethodChangeKind::matched_unchanged: break;
        }
    }
    if (rec.modified > 0) {
        rec.category = ChangeCategory::fragile;
    } else if (rec.added > 0 && rec.deleted > 0) {
        rec.category = ChangeCategory::add_remove_only;
    } else if (rec.added > 0) {
        rec.category = ChangeCategory::add_only;
    } else if (rec.deleted > 0) {
        rec.category = ChangeCategory::remove_only;
    } else {
        rec.category = ChangeCategory::non_significant;
    }
    return rec;
}

}  // namespace fragmine
