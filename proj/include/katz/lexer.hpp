#ifndef KATZ_LEXER_HPP
#define KATZ_LEXER_HPP

#include "katz/error.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace katz::detail {

// Tokens for the scalar / eigenvalue / Jordan-data text grammars.
struct Token {
    enum Kind { Number, Ident, Upper, Punct, End } kind;
    std::string text;
    size_t pos;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        size_t start = i;
        if (std::isdigit(c)) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Number, s.substr(start, i - start), start});
        } else if (std::islower(c)) {
            while (i < s.size()) {
                unsigned char d = static_cast<unsigned char>(s[i]);
                if (std::islower(d) || std::isdigit(d) || d == '_') ++i;
                else break;
            }
            out.push_back({Token::Ident, s.substr(start, i - start), start});
        } else if (std::isupper(c)) {
            ++i;
            out.push_back({Token::Upper, s.substr(start, 1), start});
        } else if (std::string("+-*/^(),:").find(static_cast<char>(c)) != std::string::npos) {
            ++i;
            out.push_back({Token::Punct, std::string(1, static_cast<char>(c)), start});
        } else {
            fail(ErrorKind::Malformed,
                 "unexpected character '" + std::string(1, static_cast<char>(c)) + "' at position " +
                     std::to_string(start) + " in \"" + s + "\"");
        }
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

class Cursor {
public:
    Cursor(const std::string& src) : src_(src), toks_(lex(src)) {}
    const Token& peek(size_t k = 0) const {
        size_t j = i_ + k;
        return j < toks_.size() ? toks_[j] : toks_.back();
    }
    Token next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    bool accept(const std::string& punct) {
        if (peek().kind == Token::Punct && peek().text == punct) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(const std::string& punct) {
        if (!accept(punct)) error("expected '" + punct + "'");
    }
    bool at_end() const { return peek().kind == Token::End; }
    [[noreturn]] void error(const std::string& what) const {
        fail(ErrorKind::Malformed, what + " at position " + std::to_string(peek().pos) + " in \"" +
                                       src_ + "\"");
    }
    size_t index() const { return i_; }
    void reset(size_t i) { i_ = i; }

private:
    std::string src_;
    std::vector<Token> toks_;
    size_t i_ = 0;
};

} // namespace katz::detail

#endif
