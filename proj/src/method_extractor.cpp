#include "fragmine/method_extractor.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

#include "fragmine/error.hpp"
#include "fragmine/java_lexer.hpp"

namespace fragmine {
namespace {

using java::Token;
using java::TokenKind;

constexpr std::array<std::string_view, 12> kModifiers = {
    "public", "protected", "private", "static", "final", "abstract",
    "synchronized", "native", "strictfp", "default", "transient", "volatile",
};

// Reserved words that can sit right before '(' but never name a method.
constexpr std::array<std::string_view, 14> kNotMethodNames = {
    "if", "while", "for", "switch", "catch", "synchronized", "return",
    "new", "try", "do", "else", "throw", "assert", "super",
};

bool is_modifier(const Token& t) {
    return t.kind == TokenKind::identifier &&
           std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end();
}

std::string join_tokens(const std::vector<Token>& tokens, std::size_t first, std::size_t last) {
    std::string out;
    for (std::size_t i = first; i <= last && i < tokens.size(); ++i) {
        if (!out.empty()) out += ' ';
        out += tokens[i].text;
    }
    return out;
}

enum class TypeKind { none, plain, enumeration };

struct Header {
    bool has_assign = false;
    TypeKind type_kind = TypeKind::none;
    std::string type_name;
    std::optional<std::pair<std::size_t, std::size_t>> last_parens;
    std::vector<std::string> annotations;
};

class Extractor {
public:
    explicit Extractor(const std::vector<Token>& tokens) : t_(tokens) {}

    void run() {
        std::size_t i = 0;
        parse_members(i, "", false);
    }

    std::vector<MethodRecord> methods;
    std::vector<std::pair<std::size_t, std::size_t>> bodies;

private:
    [[noreturn]] void unbalanced(std::size_t at) const {
        int line = at < t_.size() ? t_[at].line : (t_.empty() ? 1 : t_.back().line);
        throw Error(Errc::unbalanced_braces, "unmatched bracket near line " + std::to_string(line));
    }

    std::size_t match_close(std::size_t open) const {
        const std::string_view o = t_[open].text;
        const std::string_view c = o == "(" ? ")" : o == "{" ? "}" : "]";
        int depth = 0;
        for (std::size_t j = open; j < t_.size(); ++j) {
            if (t_[j].kind != TokenKind::punct) continue;
            if (t_[j].text == o) {
                ++depth;
            } else if (t_[j].text == c && --depth == 0) {
                return j;
            }
        }
        unbalanced(open);
    }

    bool annotation_at(std::size_t i) const {
        return t_[i].is("@") && i + 1 < t_.size() && t_[i + 1].kind == TokenKind::identifier &&
               t_[i + 1].text != "interface";
    }

    // Returns the index past the annotation starting at '@'; stores its simple name.
    std::size_t skip_annotation(std::size_t i, std::string* name) const {
        ++i;
        while (i < t_.size() && t_[i].kind == TokenKind::identifier) {
            if (name) *name = std::string(t_[i].text);
            if (i + 2 < t_.size() && t_[i + 1].is(".") && t_[i + 2].kind == TokenKind::identifier) {
                i += 2;
            } else {
                ++i;
                break;
            }
        }
        if (i < t_.size() && t_[i].is("(")) i = match_close(i) + 1;
        return i;
    }

    Header analyze_header(std::size_t begin, std::size_t end) const {
        Header h;
        for (std::size_t j = begin; j < end;) {
            const Token& tok = t_[j];
            if (annotation_at(j)) {
                std::string name;
                j = skip_annotation(j, &name);
                h.annotations.push_back(std::move(name));
                continue;
            }
            if (tok.is("(")) {
                std::size_t close = match_close(j);
                h.last_parens = {j, close};
                j = close + 1;
                continue;
            }
            if (tok.is("=")) h.has_assign = true;
            bool after_dot = j > begin && t_[j - 1].is(".");
            if (h.type_kind == TypeKind::none && tok.kind == TokenKind::identifier && !after_dot) {
                bool next_ident = j + 1 < end && t_[j + 1].kind == TokenKind::identifier;
                if ((tok.text == "class" || tok.text == "interface" || tok.text == "enum") && next_ident) {
                    h.type_kind = tok.text == "enum" ? TypeKind::enumeration : TypeKind::plain;
                    h.type_name = std::string(t_[j + 1].text);
                } else if (tok.text == "record" && next_ident && j + 2 < end &&
                           (t_[j + 2].is("(") || t_[j + 2].is("<"))) {
                    h.type_kind = TypeKind::plain;
                    h.type_name = std::string(t_[j + 1].text);
                }
            }
            ++j;
        }
        return h;
    }

    static std::string qualify(const std::string& owner, std::string_view name) {
        return owner.empty() ? std::string(name) : owner + "." + std::string(name);
    }

    // Scans a type body (or the compilation unit when !closing), leaving `i`
    // past the closing brace.
    void parse_members(std::size_t& i, const std::string& owner, bool closing) {
        std::size_t header_start = i;
        while (true) {
            if (i >= t_.size()) {
                if (closing) unbalanced(i);
                return;
            }
            const Token& tok = t_[i];
            if (tok.is("(")) {
                i = match_close(i) + 1;
            } else if (annotation_at(i)) {
                i = skip_annotation(i, nullptr);
            } else if (tok.is(";")) {
                header_start = ++i;
            } else if (tok.is("}")) {
                if (!closing) unbalanced(i);
                ++i;
                return;
            } else if (tok.is("{")) {
                on_open_brace(i, header_start, owner);
            } else {
                ++i;
            }
        }
    }

    void on_open_brace(std::size_t& i, std::size_t& header_start, const std::string& owner) {
        Header h = analyze_header(header_start, i);
        if (h.has_assign) {
            // Array initializer, lambda or anonymous class of a field; the
            // header runs on until ';'.
            i = match_close(i) + 1;
            return;
        }
        if (h.type_kind != TypeKind::none) {
            ++i;
            if (h.type_kind == TypeKind::enumeration) {
                parse_enum_body(i, qualify(owner, h.type_name));
            } else {
                parse_members(i, qualify(owner, h.type_name), true);
            }
            header_start = i;
            return;
        }
        std::size_t close = match_close(i);
        if (is_method_header(header_start, i, h)) record_method(header_start, i, close, owner, h);
        i = close + 1;
        header_start = i;
    }

    bool is_method_header(std::size_t begin, std::size_t brace, const Header& h) const {
        if (!h.last_parens) return false;
        auto [open, close] = *h.last_parens;
        if (open == begin) return false;
        const Token& name = t_[open - 1];
        if (name.kind != TokenKind::identifier) return false;
        if (std::find(kNotMethodNames.begin(), kNotMethodNames.end(), name.text) != kNotMethodNames.end()) {
            return false;
        }
        if (close + 1 == brace) return true;
        if (t_[close + 1].is_ident("throws")) return true;
        for (std::size_t j = close + 1; j < brace; ++j) {
            if (!t_[j].is("[") && !t_[j].is("]")) return false;
        }
        return true;
    }

    void record_method(std::size_t begin, std::size_t brace, std::size_t close_brace, const std::string& owner,
                       const Header& h) {
        auto [open, close] = *h.last_parens;
        MethodRecord m;
        m.owner = owner;
        m.name = std::string(t_[open - 1].text);
        m.param_types = parse_params(open, close);
        m.param_arity = m.param_types.size();
        m.body_span = {t_[brace].line, t_[close_brace].line};
        m.normalized_body = join_tokens(t_, brace, close_brace);
        m.annotations = h.annotations;
        m.is_constructor = leading_type_tokens(begin, open - 1) == 0;
        methods.push_back(std::move(m));
        bodies.emplace_back(brace, close_brace);
    }

    // Number of tokens between the modifiers/type parameters and the method
    // name; zero means the declaration has no return type.
    std::size_t leading_type_tokens(std::size_t begin, std::size_t name) const {
        std::size_t count = 0;
        bool seen_type_token = false;
        for (std::size_t j = begin; j < name;) {
            if (annotation_at(j)) {
                j = skip_annotation(j, nullptr);
                continue;
            }
            if (is_modifier(t_[j])) {
                ++j;
                continue;
            }
            if (!seen_type_token && t_[j].is("<")) {
                int depth = 0;
                for (; j < name; ++j) {
                    if (t_[j].is("<")) ++depth;
                    if (t_[j].is(">") && --depth == 0) break;
                }
                ++j;
                continue;
            }
            seen_type_token = true;
            ++count;
            ++j;
        }
        return count;
    }

    std::vector<std::string> parse_params(std::size_t open, std::size_t close) const {
        std::vector<std::string> types;
        std::vector<std::size_t> current;
        int depth = 0;
        auto flush = [&] {
            if (auto type = param_type(current)) types.push_back(std::move(*type));
            current.clear();
        };
        for (std::size_t j = open + 1; j < close; ++j) {
            const Token& tok = t_[j];
            if (annotation_at(j)) {
                j = skip_annotation(j, nullptr) - 1;
                continue;
            }
            if (tok.is("(") || tok.is("<") || tok.is("[")) ++depth;
            if (tok.is(")") || tok.is(">") || tok.is("]")) --depth;
            if (depth == 0 && tok.is(",")) {
                flush();
                continue;
            }
            current.push_back(j);
        }
        flush();
        return types;
    }

    std::optional<std::string> param_type(std::vector<std::size_t> idx) const {
        std::erase_if(idx, [&](std::size_t j) { return t_[j].is_ident("final"); });
        std::size_t dims = 0;
        while (idx.size() >= 2 && t_[idx.back()].is("]") && t_[idx[idx.size() - 2]].is("[")) {
            idx.resize(idx.size() - 2);
            ++dims;
        }
        if (idx.size() < 2) return std::nullopt;
        if (t_[idx.back()].is_ident("this")) return std::nullopt;  // receiver parameter
        idx.pop_back();
        std::string type;
        int generic_depth = 0;
        for (std::size_t j : idx) {
            if (t_[j].is("<")) {
                ++generic_depth;
            } else if (t_[j].is(">")) {
                --generic_depth;
            } else if (generic_depth == 0) {
                type += t_[j].text;
            }
        }
        for (std::size_t d = 0; d < dims; ++d) type += "[]";
        return type;
    }

    void parse_enum_body(std::size_t& i, const std::string& owner) {
        std::string constant;
        while (true) {
            if (i >= t_.size()) unbalanced(i);
            const Token& tok = t_[i];
            if (annotation_at(i)) {
                i = skip_annotation(i, nullptr);
            } else if (tok.is("(")) {
                i = match_close(i) + 1;
            } else if (tok.is("{")) {
                ++i;
                parse_members(i, qualify(owner, constant), true);
            } else if (tok.is(";")) {
                ++i;
                parse_members(i, owner, true);
                return;
            } else if (tok.is("}")) {
                ++i;
                return;
            } else {
                if (tok.kind == TokenKind::identifier) constant = std::string(tok.text);
                ++i;
            }
        }
    }

    const std::vector<Token>& t_;
};

}  // namespace

std::string MethodRecord::signature_key() const {
    std::string key = owner + "#" + name + "(";
    for (std::size_t i = 0; i < param_types.size(); ++i) {
        if (i) key += ',';
        key += param_types[i];
    }
    return key + ")";
}

bool MethodRecord::has_annotation(std::string_view simple_name) const {
    return std::find(annotations.begin(), annotations.end(), simple_name) != annotations.end();
}

ClassSnapshot extract(std::string_view source, std::string path, std::string release) {
    if (source.find('\0') != std::string_view::npos) {
        throw Error(Errc::undecodable_source, "binary content in " + path);
    }
    const std::vector<java::Token> tokens = java::tokenize(source);
    Extractor ex(tokens);
    ex.run();

    ClassSnapshot snap;
    snap.path = std::move(path);
    snap.release = std::move(release);
    snap.methods = std::move(ex.methods);

    std::size_t next_body = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (next_body < ex.bodies.size() && i == ex.bodies[next_body].first) {
            i = ex.bodies[next_body++].second;
            continue;
        }
        if (!snap.non_method_normalized.empty()) snap.non_method_normalized += ' ';
        snap.non_method_normalized += tokens[i].text;
    }
    return snap;
}

bool is_test_method(const MethodRecord& method, MethodCountOptions options) {
    if (method.is_constructor) return false;
    return !options.annotated_only || method.has_annotation("Test");
}

std::size_t count_test_methods(const ClassSnapshot& snapshot, MethodCountOptions options) {
    return static_cast<std::size_t>(std::count_if(snapshot.methods.begin(), snapshot.methods.end(),
                                                  [&](const MethodRecord& m) { return is_test_method(m, options); }));
}

}  // namespace fragmine
