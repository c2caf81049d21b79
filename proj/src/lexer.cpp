#include <array>
#include <string_view>
#include <unordered_set>

#include "cct/error.hpp"
#include "cct/parser.hpp"

namespace cct {

namespace {

const std::unordered_set<std::string_view> kTypeKeywords = {
    "void", "char", "short", "int", "long", "float", "double", "signed", "unsigned", "_Bool",
};

const std::unordered_set<std::string_view> kKeywords = {
    "auto", "break", "case", "const", "continue", "default", "do", "else", "enum",
    "extern", "for", "goto", "if", "inline", "register", "restrict", "return",
    "sizeof", "static", "struct", "switch", "typedef", "union", "volatile", "while",
};

constexpr std::array<std::string_view, 3> kOps3 = {"<<=", ">>=", "..."};
constexpr std::array<std::string_view, 19> kOps2 = {
    "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
    "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=",
};

bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    size_t i = 0;
    const size_t n = text.size();
    auto push = [&](size_t begin, size_t end, TerminalType t) {
        out.push_back(Token{text.substr(begin, end - begin),
                            Span{static_cast<uint32_t>(begin), static_cast<uint32_t>(end)}, t,
                            NodeKind::TranslationUnit});
    };
    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\n') {
            ++i;
            continue;
        }
        const size_t start = i;
        if (is_ident_start(c)) {
            while (i < n && is_ident_char(text[i])) ++i;
            const std::string_view word(text.data() + start, i - start);
            TerminalType t = TerminalType::Identifier;
            if (kTypeKeywords.count(word)) t = TerminalType::Type;
            else if (kKeywords.count(word)) t = TerminalType::Keyword;
            push(start, i, t);
            continue;
        }
        if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(text[i + 1]))) {
            if (c == '0' && i + 1 < n && (text[i + 1] == 'x' || text[i + 1] == 'X')) {
                i += 2;
                while (i < n && is_hex(text[i])) ++i;
            } else {
                while (i < n && is_digit(text[i])) ++i;
                if (i < n && text[i] == '.') {
                    ++i;
                    while (i < n && is_digit(text[i])) ++i;
                }
                if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                    size_t j = i + 1;
                    if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                    if (j < n && is_digit(text[j])) {
                        i = j;
                        while (i < n && is_digit(text[i])) ++i;
                    }
                }
            }
            while (i < n && (text[i] == 'u' || text[i] == 'U' || text[i] == 'l' ||
                             text[i] == 'L' || text[i] == 'f' || text[i] == 'F'))
                ++i;
            push(start, i, TerminalType::NumberLiteral);
            continue;
        }
        if (c == '"' || c == '\'') {
            const char quote = c;
            ++i;
            while (i < n && text[i] != quote) {
                if (text[i] == '\\' && i + 1 < n) ++i;
                if (text[i] == '\n') throw ParseError("unterminated literal");
                ++i;
            }
            if (i >= n) throw ParseError("unterminated literal");
            ++i;
            push(start, i,
                 quote == '"' ? TerminalType::StringLiteral : TerminalType::CharLiteral);
            continue;
        }
        if (c == '(' || c == ')' || c == '{' || c == '}' || c == '[' || c == ']' ||
            c == ';' || c == ',') {
            push(start, ++i, TerminalType::Punctuation);
            continue;
        }
        bool matched = false;
        for (const auto op : kOps3) {
            if (text.compare(i, op.size(), op) == 0) {
                i += op.size();
                push(start, i, TerminalType::Operator);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        for (const auto op : kOps2) {
            if (text.compare(i, op.size(), op) == 0) {
                i += op.size();
                push(start, i, TerminalType::Operator);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (std::string_view("+-*/%=<>!~&|^?:.").find(c) != std::string_view::npos) {
            push(start, ++i, TerminalType::Operator);
            continue;
        }
        throw ParseError("unexpected byte '" + std::string(1, c) + "' at offset " +
                         std::to_string(i));
    }
    return out;
}

}  // namespace cct
