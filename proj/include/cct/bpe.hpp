#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cct/source.hpp"

namespace cct {

// Byte-pair subword tokenizer. Training merges the most frequent adjacent
// piece pair, breaking frequency ties lexicographically so retraining on the
// same corpus is byte-stable. Encoding is greedy longest-match against the
// final piece inventory, which is why the model file needs only the
// vocabulary and no merge list.
class SubwordTokenizer {
public:
    static constexpr int kPad = 0;
    static constexpr int kUnk = 1;
    static constexpr int kCls = 2;
    static constexpr int kSep = 3;
    static constexpr int kMask = 4;
    static constexpr int kSpecialCount = 5;

    int size() const { return static_cast<int>(pieces_.size()); }
    const std::string& piece(int id) const { return pieces_[static_cast<size_t>(id)]; }
    int id_of(const std::string& piece) const;

    // Subword ids for one code token's text; always ≥ 1 id. Bytes outside
    // the trained alphabet map to [UNK].
    std::vector<int> encode(const std::string& word) const;
    std::string decode(const std::vector<int>& ids) const;

    void save(const std::string& path) const;
    static SubwordTokenizer load(const std::string& path);
    static SubwordTokenizer from_pieces(std::vector<std::string> pieces);

private:
    friend SubwordTokenizer train_subword_tokenizer(const std::vector<SourceUnit>&, int);
    std::vector<std::string> pieces_;
    std::unordered_map<std::string, int> ids_;
    size_t max_piece_len_ = 1;
    void rebuild_index();
};

// Trains on the corpus's flattened lexical token sequences. Throws
// ConfigError when vocab_size cannot hold the specials plus the observed
// alphabet, or when the corpus runs out of mergeable pairs first.
SubwordTokenizer train_subword_tokenizer(const std::vector<SourceUnit>& corpus, int vocab_size);

std::string escape_piece(const std::string& s);
std::string unescape_piece(const std::string& s);

}  // namespace cct
