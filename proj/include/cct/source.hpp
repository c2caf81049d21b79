#pragma once

#include <cstdint>
#include <string>

namespace cct {

enum class Language { C, Java };

const char* language_name(Language lang);
Language language_from_name(const std::string& name);

// One function-granularity unit of normalized source text.
struct SourceUnit {
    std::string id;           // unique within a corpus: "<path>:<byte offset>"
    Language language = Language::C;
    std::string text;         // normalized: no comments, no blank lines
    std::string origin_path;
};

// Strips block/line comments and preprocessor directive lines, drops blank
// lines, and canonicalizes line endings to '\n'. String and character
// literals are respected while scanning.
std::string normalize_source(const std::string& raw);

// Half-open byte range into SourceUnit::text.
struct Span {
    uint32_t begin = 0;
    uint32_t end = 0;
    uint32_t size() const { return end - begin; }
    bool operator==(const Span&) const = default;
};

}  // namespace cct
