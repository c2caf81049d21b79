#include "cct/source.hpp"

#include <sstream>

#include "cct/error.hpp"

namespace cct {

const char* language_name(Language lang) {
    return lang == Language::C ? "c" : "java";
}

Language language_from_name(const std::string& name) {
    if (name == "c" || name == "C") return Language::C;
    if (name == "java" || name == "Java") return Language::Java;
    throw ConfigError("unknown language: " + name);
}

namespace {

// Replaces comments and preprocessor directive lines with whitespace so
// byte positions stay line-stable before the blank-line pass.
std::string strip_comments(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    enum class St { Code, LineStart, Slash, LineComment, BlockComment, BlockStar, Str, StrEsc, Chr, ChrEsc, Directive };
    St st = St::LineStart;
    for (size_t i = 0; i < raw.size(); ++i) {
        const char c = raw[i];
        if (c == '\r') continue;
        switch (st) {
            case St::LineStart:
                if (c == '#') { st = St::Directive; break; }
                if (c == ' ' || c == '\t') { out += c; break; }
                st = St::Code;
                [[fallthrough]];
            case St::Code:
                if (c == '/') { st = St::Slash; break; }
                if (c == '"') { st = St::Str; out += c; break; }
                if (c == '\'') { st = St::Chr; out += c; break; }
                if (c == '\n') st = St::LineStart;
                out += c;
                break;
            case St::Slash:
                if (c == '/') { st = St::LineComment; break; }
                if (c == '*') { st = St::BlockComment; break; }
                out += '/';
                st = St::Code;
                --i;  // re-handle c in Code state
                break;
            case St::LineComment:
                if (c == '\n') { out += ' '; out += '\n'; st = St::LineStart; }
                break;
            case St::BlockComment:
                if (c == '*') st = St::BlockStar;
                else if (c == '\n') out += '\n';
                break;
            case St::BlockStar:
                if (c == '/') { out += ' '; st = St::Code; }
                else if (c != '*') { st = St::BlockComment; if (c == '\n') out += '\n'; }
                break;
            case St::Str:
                out += c;
                if (c == '\\') st = St::StrEsc;
                else if (c == '"') st = St::Code;
                else if (c == '\n') st = St::LineStart;  // unterminated; the parser will reject
                break;
            case St::StrEsc:
                out += c;
                st = St::Str;
                break;
            case St::Chr:
                out += c;
                if (c == '\\') st = St::ChrEsc;
                else if (c == '\'') st = St::Code;
                else if (c == '\n') st = St::LineStart;
                break;
            case St::ChrEsc:
                out += c;
                st = St::Chr;
                break;
            case St::Directive:
                if (c == '\\' && i + 1 < raw.size() && (raw[i + 1] == '\n' || raw[i + 1] == '\r')) {
                    ++i;  // line continuation stays part of the directive
                    if (i + 1 < raw.size() && raw[i] == '\r' && raw[i + 1] == '\n') ++i;
                    break;
                }
                if (c == '\n') { out += '\n'; st = St::LineStart; }
                break;
        }
    }
    if (st == St::Slash) out += '/';
    return out;
}

bool is_blank(const std::string& line) {
    for (const char c : line)
        if (c != ' ' && c != '\t') return false;
    return true;
}

}  // namespace

std::string normalize_source(const std::string& raw) {
    const std::string stripped = strip_comments(raw);
    std::string out;
    out.reserve(stripped.size());
    std::istringstream in(stripped);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        // trim trailing whitespace left behind by comment removal
        size_t end = line.size();
        while (end > 0 && (line[end - 1] == ' ' || line[end - 1] == '\t')) --end;
        line.resize(end);
        if (is_blank(line)) continue;
        if (!first) out += '\n';
        out += line;
        first = false;
    }
    return out;
}

}  // namespace cct
