#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "cct/source.hpp"

namespace cct {

// Vocabulary over tt#pt annotation labels, built by scanning a corpus for
// every observed pair before training. Labels unseen at inference map to
// [UNK]. Shares the tokenizer's special-token ids and file format.
class TypeVocab {
public:
    static constexpr int kPad = 0;
    static constexpr int kUnk = 1;
    static constexpr int kCls = 2;
    static constexpr int kSep = 3;
    static constexpr int kMask = 4;
    static constexpr int kSpecialCount = 5;

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int id) const { return labels_[static_cast<size_t>(id)]; }
    int id_of(const std::string& label) const;
    bool contains(const std::string& label) const { return ids_.count(label) > 0; }

    void save(const std::string& path) const;
    static TypeVocab load(const std::string& path);
    static TypeVocab from_labels(const std::vector<std::string>& observed);

    // Parses every unit and collects observed tt#pt labels. Unparseable
    // units are ignored here; the pipeline counts them separately.
    static TypeVocab scan_corpus(const std::vector<SourceUnit>& corpus);

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> ids_;
};

// Splits "tt#pt" back into its two halves.
std::pair<std::string, std::string> split_type_label(const std::string& label);

}  // namespace cct
