#include "cct/rewrite.hpp"

#include <algorithm>

#include "cct/error.hpp"

namespace cct {

std::string apply_edits(const std::string& text, std::vector<Edit> edits) {
    std::sort(edits.begin(), edits.end(),
              [](const Edit& a, const Edit& b) { return a.span.begin < b.span.begin; });
    for (size_t i = 0; i + 1 < edits.size(); ++i)
        if (edits[i].span.end > edits[i + 1].span.begin)
            throw ConfigError("overlapping rewrite edits");
    std::string out = text;
    for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
        if (it->span.end > out.size()) throw ConfigError("rewrite edit out of range");
        out.replace(it->span.begin, it->span.size(), it->replacement);
    }
    return out;
}

}  // namespace cct
