#include "cct/sequences.hpp"

namespace cct {

std::pair<CodeSequence, TypeSequence> build_sequences(const std::vector<Token>& tokens,
                                                      const SubwordTokenizer& tok,
                                                      const TypeVocab& types) {
    CodeSequence code;
    TypeSequence type;
    code.ids.push_back(SubwordTokenizer::kCls);
    code.token_of.push_back(-1);
    type.ids.push_back(TypeVocab::kCls);
    for (size_t t = 0; t < tokens.size(); ++t) {
        const int type_id = types.id_of(tokens[t].type_label());
        for (const int id : tok.encode(tokens[t].text)) {
            code.ids.push_back(id);
            code.token_of.push_back(static_cast<int>(t));
            type.ids.push_back(type_id);
        }
    }
    code.ids.push_back(SubwordTokenizer::kSep);
    code.token_of.push_back(-1);
    type.ids.push_back(TypeVocab::kSep);
    return {std::move(code), std::move(type)};
}

}  // namespace cct
