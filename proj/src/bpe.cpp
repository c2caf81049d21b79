#include "cct/bpe.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>

#include "cct/error.hpp"
#include "cct/parser.hpp"

namespace cct {

namespace {

const char* kSpecialNames[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};

struct PairHash {
    size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<int64_t>()((static_cast<int64_t>(p.first) << 32) ^
                                    static_cast<uint32_t>(p.second));
    }
};

}  // namespace

void SubwordTokenizer::rebuild_index() {
    ids_.clear();
    max_piece_len_ = 1;
    for (size_t i = 0; i < pieces_.size(); ++i) {
        ids_[pieces_[i]] = static_cast<int>(i);
        if (i >= kSpecialCount) max_piece_len_ = std::max(max_piece_len_, pieces_[i].size());
    }
}

int SubwordTokenizer::id_of(const std::string& piece) const {
    const auto it = ids_.find(piece);
    return it == ids_.end() ? kUnk : it->second;
}

std::vector<int> SubwordTokenizer::encode(const std::string& word) const {
    std::vector<int> out;
    if (word.empty()) return {kUnk};
    size_t i = 0;
    while (i < word.size()) {
        const size_t longest = std::min(max_piece_len_, word.size() - i);
        int found = -1;
        size_t len = 0;
        for (size_t l = longest; l >= 1; --l) {
            const auto it = ids_.find(word.substr(i, l));
            // special names are not matchable text; they are addressed by id only
            if (it != ids_.end() && it->second >= kSpecialCount) {
                found = it->second;
                len = l;
                break;
            }
        }
        if (found < 0) {
            out.push_back(kUnk);
            i += 1;
        } else {
            out.push_back(found);
            i += len;
        }
    }
    return out;
}

std::string SubwordTokenizer::decode(const std::vector<int>& ids) const {
    std::string out;
    for (const int id : ids) out += piece(id);
    return out;
}

SubwordTokenizer SubwordTokenizer::from_pieces(std::vector<std::string> pieces) {
    SubwordTokenizer t;
    t.pieces_ = std::move(pieces);
    t.rebuild_index();
    return t;
}

SubwordTokenizer train_subword_tokenizer(const std::vector<SourceUnit>& corpus,
                                         int vocab_size) {
    if (corpus.empty()) throw ConfigError("tokenizer training corpus is empty");

    // flattened code-token sequences → word frequencies
    std::map<std::string, int64_t> word_freq;
    for (const SourceUnit& unit : corpus)
        for (const Token& tok : lex(unit.text)) ++word_freq[tok.text];

    std::set<std::string> alphabet;
    for (const auto& [word, freq] : word_freq)
        for (const char c : word) alphabet.insert(std::string(1, c));

    const int base = SubwordTokenizer::kSpecialCount + static_cast<int>(alphabet.size());
    if (vocab_size < base)
        throw ConfigError("vocab_size " + std::to_string(vocab_size) +
                          " below alphabet+specials (" + std::to_string(base) + ")");

    std::vector<std::string> pieces(kSpecialNames, kSpecialNames + 5);
    std::map<std::string, int> piece_id;
    for (const std::string& a : alphabet) {
        piece_id[a] = static_cast<int>(pieces.size());
        pieces.push_back(a);
    }

    struct Word {
        std::vector<int> seq;
        int64_t freq;
    };
    std::vector<Word> words;
    words.reserve(word_freq.size());
    for (const auto& [word, freq] : word_freq) {
        Word w{{}, freq};
        w.seq.reserve(word.size());
        for (const char c : word) w.seq.push_back(piece_id[std::string(1, c)]);
        words.push_back(std::move(w));
    }

    while (static_cast<int>(pieces.size()) < vocab_size) {
        std::unordered_map<std::pair<int, int>, int64_t, PairHash> pair_count;
        for (const Word& w : words)
            for (size_t i = 0; i + 1 < w.seq.size(); ++i)
                pair_count[{w.seq[i], w.seq[i + 1]}] += w.freq;
        if (pair_count.empty())
            throw ConfigError("corpus exhausted after " + std::to_string(pieces.size()) +
                              " pieces; cannot reach vocab_size " +
                              std::to_string(vocab_size));

        // highest count; ties broken by the lexicographically smallest pair
        std::pair<int, int> best{-1, -1};
        int64_t best_count = -1;
        for (const auto& [pair, count] : pair_count) {
            if (count < best_count) continue;
            if (count > best_count) {
                best = pair;
                best_count = count;
                continue;
            }
            const auto& [bl, br] = best;
            if (std::tie(pieces[pair.first], pieces[pair.second]) <
                std::tie(pieces[bl], pieces[br]))
                best = pair;
        }

        const std::string merged = pieces[best.first] + pieces[best.second];
        int merged_id;
        const auto it = piece_id.find(merged);
        if (it != piece_id.end()) {
            merged_id = it->second;  // same surface form reached via another merge path
        } else {
            merged_id = static_cast<int>(pieces.size());
            pieces.push_back(merged);
            piece_id[merged] = merged_id;
        }
        for (Word& w : words) {
            size_t out = 0;
            for (size_t i = 0; i < w.seq.size(); ++i) {
                if (i + 1 < w.seq.size() && w.seq[i] == best.first &&
                    w.seq[i + 1] == best.second) {
                    w.seq[out++] = merged_id;
                    ++i;
                } else {
                    w.seq[out++] = w.seq[i];
                }
            }
            w.seq.resize(out);
        }
    }

    return SubwordTokenizer::from_pieces(std::move(pieces));
}

std::string escape_piece(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\\': out += "\\\\"; break;
            default: out += c;
        }
    }
    return out;
}

std::string unescape_piece(const std::string& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '\\' || i + 1 >= s.size()) {
            out += s[i];
            continue;
        }
        switch (s[++i]) {
            case 't': out += '\t'; break;
            case 'n': out += '\n'; break;
            case 'r': out += '\r'; break;
            case '\\': out += '\\'; break;
            default: out += s[i];
        }
    }
    return out;
}

void SubwordTokenizer::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write tokenizer model: " + path);
    out << "vocab_size\t" << size() << "\n";
    for (int i = 0; i < size(); ++i) out << escape_piece(pieces_[i]) << "\t" << i << "\n";
}

SubwordTokenizer SubwordTokenizer::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read tokenizer model: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("vocab_size\t", 0) != 0)
        throw IoError("bad tokenizer model header: " + path);
    const int n = std::stoi(line.substr(11));
    std::vector<std::string> pieces(static_cast<size_t>(n));
    int seen = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t tab = line.rfind('\t');
        if (tab == std::string::npos) throw IoError("bad vocab line: " + line);
        const int id = std::stoi(line.substr(tab + 1));
        if (id < 0 || id >= n) throw IoError("vocab id out of range: " + line);
        pieces[static_cast<size_t>(id)] = unescape_piece(line.substr(0, tab));
        ++seen;
    }
    if (seen != n) throw IoError("vocab entry count mismatch in " + path);
    return from_pieces(std::move(pieces));
}

}  // namespace cct
