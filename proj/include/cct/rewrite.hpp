#pragma once

#include <map>
#include <string>
#include <vector>

#include "cct/menu.hpp"
#include "cct/source.hpp"

namespace cct {

struct Edit {
    Span span;
    std::string replacement;
};

// A set of non-overlapping span edits carrying transform provenance.
struct Rewrite {
    std::vector<Edit> edits;
    TransformKind kind = TransformKind::VarRename;
    std::map<std::string, std::string> rename_map;  // for rename transforms
};

// Applies edits back-to-front. Throws ConfigError on overlapping spans.
std::string apply_edits(const std::string& text, std::vector<Edit> edits);

enum class Relation { Positive, Negative };

// A rewritten unit together with how it was produced.
struct TransformedCode {
    SourceUnit unit;
    std::vector<TransformKind> provenance;
    Relation relation = Relation::Positive;
};

}  // namespace cct
