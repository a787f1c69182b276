#include "fragmine/java_lexer.hpp"

#include <array>

namespace fragmine::java {
namespace {

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

// Longest-match operator table, longest first. '>' is deliberately absent
// from every multi-char entry.
constexpr std::array<std::string_view, 20> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=", "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<",
};

class Lexer {
public:
    Lexer(std::string_view src, bool keep_comments) : src_(src), keep_comments_(keep_comments) {
        if (src_.starts_with("\xEF\xBB\xBF")) pos_ = 3;
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < src_.size()) {
            const unsigned char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                ++pos_;
            } else if (c == '/' && peek(1) == '/') {
                std::size_t start = pos_;
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
                emit_comment(out, start, line_);
            } else if (c == '/' && peek(1) == '*') {
                std::size_t start = pos_;
                int start_line = line_;
                pos_ += 2;
                while (pos_ < src_.size() && !(src_[pos_] == '*' && peek(1) == '/')) {
                    if (src_[pos_] == '\n') ++line_;
                    ++pos_;
                }
                pos_ = std::min(src_.size(), pos_ + 2);
                emit_comment(out, start, start_line);
            } else if (c == '"' && peek(1) == '"' && peek(2) == '"') {
                lex_text_block(out);
            } else if (c == '"' || c == '\'') {
                lex_quoted(out, static_cast<char>(c));
            } else if (is_digit(c) || (c == '.' && is_digit(peek(1)))) {
                lex_number(out);
            } else if (is_ident_start(c)) {
                std::size_t start = pos_;
                while (pos_ < src_.size() && is_ident_part(src_[pos_])) ++pos_;
                out.push_back({TokenKind::identifier, src_.substr(start, pos_ - start), line_, start});
            } else {
                lex_punct(out);
            }
        }
        return out;
    }

private:
    unsigned char peek(std::size_t ahead) const {
        return pos_ + ahead < src_.size() ? static_cast<unsigned char>(src_[pos_ + ahead]) : 0;
    }

    void emit_comment(std::vector<Token>& out, std::size_t start, int line) {
        if (keep_comments_) out.push_back({TokenKind::comment, src_.substr(start, pos_ - start), line, start});
    }

    void lex_text_block(std::vector<Token>& out) {
        std::size_t start = pos_;
        int start_line = line_;
        pos_ += 3;
        while (pos_ < src_.size()) {
            if (src_[pos_] == '\\') {
                if (peek(1) == '\n') ++line_;
                pos_ += 2;
                continue;
            }
            if (src_[pos_] == '"' && peek(1) == '"' && peek(2) == '"') {
                pos_ += 3;
                break;
            }
            if (src_[pos_] == '\n') ++line_;
            ++pos_;
        }
        pos_ = std::min(pos_, src_.size());
        out.push_back({TokenKind::string_literal, src_.substr(start, pos_ - start), start_line, start});
    }

    // Unterminated literals stop at end of line so one stray quote cannot
    // swallow the rest of the file.
    void lex_quoted(std::vector<Token>& out, char quote) {
        std::size_t start = pos_++;
        while (pos_ < src_.size() && src_[pos_] != quote && src_[pos_] != '\n') {
            pos_ += src_[pos_] == '\\' ? 2 : 1;
        }
        if (pos_ < src_.size() && src_[pos_] == quote) ++pos_;
        pos_ = std::min(pos_, src_.size());
        auto kind = quote == '"' ? TokenKind::string_literal : TokenKind::char_literal;
        out.push_back({kind, src_.substr(start, pos_ - start), line_, start});
    }

    void lex_number(std::vector<Token>& out) {
        std::size_t start = pos_;
        while (pos_ < src_.size()) {
            const unsigned char c = src_[pos_];
            if (is_ident_part(c) || c == '.') {
                ++pos_;
            } else if ((c == '+' || c == '-') && pos_ > start) {
                const unsigned char prev = src_[pos_ - 1];
                bool hex = src_.substr(start, 2) == "0x" || src_.substr(start, 2) == "0X";
                bool exponent = hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E');
                if (!exponent) break;
                ++pos_;
            } else {
                break;
            }
        }
        out.push_back({TokenKind::number, src_.substr(start, pos_ - start), line_, start});
    }

    void lex_punct(std::vector<Token>& out) {
        for (std::string_view op : kOperators) {
            if (src_.substr(pos_, op.size()) == op) {
                out.push_back({TokenKind::punct, src_.substr(pos_, op.size()), line_, pos_});
                pos_ += op.size();
                return;
            }
        }
        out.push_back({TokenKind::punct, src_.substr(pos_, 1), line_, pos_});
        ++pos_;
    }

    std::string_view src_;
    bool keep_comments_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, bool keep_comments) {
    return Lexer(source, keep_comments).run();
}

}  // namespace fragmine::java
