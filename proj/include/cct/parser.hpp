#pragma once

#include <vector>

#include "cct/source.hpp"
#include "cct/syntax_tree.hpp"
#include "cct/token.hpp"

namespace cct {

// Lexes normalized C text. Throws ParseError on bytes outside the lexical
// grammar. Token parent fields are left at their default until parsing.
std::vector<Token> lex(const std::string& text);

// Parses one function definition into a concrete syntax tree whose root is
// the func_definition node. Throws ParseError when the grammar rejects the
// text; callers skip (and count) such units.
SyntaxTree parse_source(const SourceUnit& unit);

// Tokens in source order, each carrying (tt, pt) read from the tree. Total
// over valid trees.
std::vector<Token> lex_and_annotate(const SyntaxTree& tree);

// Scans a whole normalized file and returns the byte ranges of top-level
// function definitions. Purely lexical (brace matching), so files that mix
// parseable and unparseable functions still yield the parseable ones.
std::vector<Span> extract_function_ranges(const std::string& text);

}  // namespace cct
