#include "cct/type_vocab.hpp"

#include <fstream>
#include <set>

#include "cct/bpe.hpp"
#include "cct/error.hpp"
#include "cct/parser.hpp"

namespace cct {

namespace {
const char* kSpecialNames[] = {"[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"};
}

int TypeVocab::id_of(const std::string& label) const {
    const auto it = ids_.find(label);
    return it == ids_.end() ? kUnk : it->second;
}

TypeVocab TypeVocab::from_labels(const std::vector<std::string>& observed) {
    TypeVocab v;
    v.labels_.assign(kSpecialNames, kSpecialNames + 5);
    std::set<std::string> uniq(observed.begin(), observed.end());
    for (const std::string& s : uniq) v.labels_.push_back(s);
    for (size_t i = 0; i < v.labels_.size(); ++i) v.ids_[v.labels_[i]] = static_cast<int>(i);
    return v;
}

TypeVocab TypeVocab::scan_corpus(const std::vector<SourceUnit>& corpus) {
    std::vector<std::string> labels;
    for (const SourceUnit& unit : corpus) {
        try {
            const SyntaxTree tree = parse_source(unit);
            for (const Token& tok : tree.tokens) labels.push_back(tok.type_label());
        } catch (const ParseError&) {
            continue;
        }
    }
    return from_labels(labels);
}

void TypeVocab::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write type vocabulary: " + path);
    out << "vocab_size\t" << size() << "\n";
    for (int i = 0; i < size(); ++i) out << escape_piece(labels_[i]) << "\t" << i << "\n";
}

TypeVocab TypeVocab::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read type vocabulary: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("vocab_size\t", 0) != 0)
        throw IoError("bad type vocabulary header: " + path);
    const int n = std::stoi(line.substr(11));
    std::vector<std::string> labels(static_cast<size_t>(n));
    int seen = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t tab = line.rfind('\t');
        if (tab == std::string::npos) throw IoError("bad type vocab line: " + line);
        const int id = std::stoi(line.substr(tab + 1));
        if (id < 0 || id >= n) throw IoError("type vocab id out of range: " + line);
        labels[static_cast<size_t>(id)] = unescape_piece(line.substr(0, tab));
        ++seen;
    }
    if (seen != n) throw IoError("type vocab entry count mismatch in " + path);
    TypeVocab v;
    v.labels_ = std::move(labels);
    for (size_t i = 0; i < v.labels_.size(); ++i) v.ids_[v.labels_[i]] = static_cast<int>(i);
    return v;
}

std::pair<std::string, std::string> split_type_label(const std::string& label) {
    const size_t hash = label.find('#');
    if (hash == std::string::npos) throw ConfigError("not a tt#pt label: " + label);
    return {label.substr(0, hash), label.substr(hash + 1)};
}

}  // namespace cct
