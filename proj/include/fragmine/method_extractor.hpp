#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fragmine {

struct LineSpan {
    int start = 0;
    int end = 0;
    bool operator==(const LineSpan&) const = default;
};

/// One method (or constructor) with a brace-delimited body.
///
/// `normalized_body` is the body's token sequence, braces included, joined
/// by single spaces. Comments never appear in it and string literals are kept
/// verbatim, so two bodies compare equal exactly when they differ only in
/// whitespace or comments.
struct MethodRecord {
    std::string owner;  // enclosing type chain, e.g. "LoginTest.Helper"
    std::string name;
    std::size_t param_arity = 0;
    std::vector<std::string> param_types;  // generics erased: "List<String>" -> "List"
    LineSpan body_span;
    std::string normalized_body;
    bool is_constructor = false;
    std::vector<std::string> annotations;  // simple names, e.g. "Test", "Before"

    /// Identity used to match a method across two versions of a file.
    std::string signature_key() const;
    bool has_annotation(std::string_view simple_name) const;
};

struct ClassSnapshot {
    std::string path;
    std::string release;
    std::vector<MethodRecord> methods;
    // Tokens outside every method body: package, imports, fields,
    // annotations, method headers.
    std::string non_method_normalized;
};

/// Lexer-level method extraction. Comments and literals are masked before
/// boundaries are searched, anonymous and local classes stay inside the body
/// of the method declaring them, and abstract or interface declarations
/// without a body are skipped. Methods of anonymous classes used as field
/// initializers belong to the non-method region.
///
/// Throws Error{unbalanced_braces} when braces do not pair up and
/// Error{undecodable_source} for binary input.
ClassSnapshot extract(std::string_view source, std::string path = {}, std::string release = {});

struct MethodCountOptions {
    // Count only methods annotated with @Test instead of every non-constructor.
    bool annotated_only = false;
};

bool is_test_method(const MethodRecord& method, MethodCountOptions options = {});

std::size_t count_test_methods(const ClassSnapshot& snapshot, MethodCountOptions options = {});

}  // namespace fragmine
