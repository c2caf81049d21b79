#pragma once

#include <utility>
#include <vector>

#include "cct/bpe.hpp"
#include "cct/token.hpp"
#include "cct/type_vocab.hpp"

namespace cct {

// Subtoken id sequence wrapped in [CLS]/[SEP]. token_of maps each position
// back to its source token index; sentinel positions map to -1.
struct CodeSequence {
    std::vector<int> ids;
    std::vector<int> token_of;
    size_t size() const { return ids.size(); }
};

// Annotation id sequence aligned position-by-position with a CodeSequence.
// Every subtoken of one source token carries that token's type id.
struct TypeSequence {
    std::vector<int> ids;
    size_t size() const { return ids.size(); }
};

std::pair<CodeSequence, TypeSequence> build_sequences(const std::vector<Token>& tokens,
                                                      const SubwordTokenizer& tok,
                                                      const TypeVocab& types);

}  // namespace cct
