#include "cct/token_diff.hpp"

#include <algorithm>
#include <cstdlib>

#include "cct/parser.hpp"

namespace cct {

std::vector<std::string> lex_token_texts(const std::string& text) {
    std::vector<std::string> out;
    for (const Token& t : lex(text)) out.push_back(t.text);
    return out;
}

int token_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b,
                        int band) {
    const int n = static_cast<int>(a.size());
    const int m = static_cast<int>(b.size());
    if (std::abs(n - m) > band) return band + 1;
    const int inf = band + 1;
    std::vector<int> prev(static_cast<size_t>(m) + 1, inf), cur(static_cast<size_t>(m) + 1, inf);
    for (int j = 0; j <= std::min(m, band); ++j) prev[static_cast<size_t>(j)] = j;
    for (int i = 1; i <= n; ++i) {
        std::fill(cur.begin(), cur.end(), inf);
        const int lo = std::max(0, i - band);
        const int hi = std::min(m, i + band);
        if (lo == 0) cur[0] = i <= band ? i : inf;
        for (int j = std::max(1, lo); j <= hi; ++j) {
            const int sub = prev[static_cast<size_t>(j - 1)] +
                            (a[static_cast<size_t>(i - 1)] == b[static_cast<size_t>(j - 1)] ? 0 : 1);
            const int del = prev[static_cast<size_t>(j)] + 1;
            const int ins = cur[static_cast<size_t>(j - 1)] + 1;
            cur[static_cast<size_t>(j)] = std::min({sub, del, ins, inf});
        }
        std::swap(prev, cur);
    }
    return std::min(prev[static_cast<size_t>(m)], inf);
}

}  // namespace cct
