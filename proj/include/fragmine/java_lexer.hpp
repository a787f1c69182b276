#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace fragmine::java {

enum class TokenKind {
    identifier,
    number,
    string_literal,  // includes text blocks
    char_literal,
    punct,
    comment,
};

// A lexeme of the input. `text` views into the source buffer, which must
// outlive the token.
struct Token {
    TokenKind kind;
    std::string_view text;
    int line = 1;
    std::size_t offset = 0;

    bool is(std::string_view s) const noexcept {
        return kind == TokenKind::punct && text == s;
    }
    bool is_ident(std::string_view s) const noexcept {
        return kind == TokenKind::identifier && text == s;
    }
};

// Splits Java source into tokens. Comments are emitted as TokenKind::comment
// only when `keep_comments` is set. Every '>' is its own token so nested
// generic closers never fuse into shift operators.
std::vector<Token> tokenize(std::string_view source, bool keep_comments = false);

}  // namespace fragmine::java
