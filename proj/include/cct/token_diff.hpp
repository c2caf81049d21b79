#pragma once

#include <string>
#include <vector>

namespace cct {

// Lexical token texts of normalized source; throws ParseError on bad bytes.
std::vector<std::string> lex_token_texts(const std::string& text);

// Levenshtein distance over token sequences, banded: any distance above
// `band` is reported as band + 1.
int token_edit_distance(const std::vector<std::string>& a, const std::vector<std::string>& b,
                        int band);

}  // namespace cct
