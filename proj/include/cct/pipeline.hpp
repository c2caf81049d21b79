#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cct/bpe.hpp"
#include "cct/rng.hpp"
#include "cct/sequences.hpp"
#include "cct/source.hpp"
#include "cct/transform_neg.hpp"
#include "cct/transform_pos.hpp"
#include "cct/type_vocab.hpp"

namespace cct {

// The masking recipe for one code sequence: positions to hide ([MASK]),
// positions to corrupt with random ids, and positions left intact but still
// predicted. Sentinels are never selected.
struct MaskPlan {
    std::vector<int> masked;     // loc_m
    std::vector<int> replaced;   // loc_r
    std::vector<int> unchanged;  // loc_u
    std::vector<std::array<int, 2>> replacement_ids;  // per replaced pos: {code id, type id}
    int seq_len = 0;

    // M = loc_m ∪ loc_r ∪ loc_u, sorted ascending.
    std::vector<int> all_positions() const;
};

// 15% of maskable positions (round half up, minimum one), split 80/10/10 in
// expectation across masked/replaced/unchanged.
MaskPlan plan_masks(const CodeSequence& seq, Rng& rng, int code_vocab_size,
                    int type_vocab_size);

// Applies one plan to both streams: the same operation happens at the same
// position in the code and type sequences. Throws std::out_of_range when
// the plan's length disagrees with the sequences.
std::pair<std::vector<int>, std::vector<int>> apply_masks(const CodeSequence& code,
                                                          const TypeSequence& type,
                                                          const MaskPlan& plan);

struct SequencedUnit {
    std::string id;
    std::string text;
    std::vector<int> code_ids;
    std::vector<int> type_ids;
};

struct Triplet {
    SequencedUnit x;
    SequencedUnit x_pos;
    SequencedUnit x_neg;
    std::vector<TransformKind> pos_transforms;
    BugTag bug;
    uint64_t seed = 0;
};

struct DatasetRecord {
    Triplet triplet;
    MaskPlan mask;
};

struct IngestFilters {
    int min_tokens = 0;
    int max_tokens = 0;  // 0 → unlimited
};

struct RunStats {
    int64_t files_scanned = 0;
    int64_t io_errors = 0;
    int64_t functions_extracted = 0;
    int64_t parse_failures = 0;
    int64_t filtered_out = 0;
    int64_t ingested = 0;
    int64_t emitted = 0;
    std::map<std::string, int64_t> skipped;            // reason → count
    std::map<std::string, int64_t> positive_kinds;     // transform → count
    std::map<std::string, int64_t> bug_families;       // family → count
    int64_t skipped_total() const;
    std::string to_json() const;
};

// One SourceUnit per function extracted from every .c file under the roots,
// in lexicographic (path, offset) order. IO failures and unparseable
// functions are counted, never fatal.
std::vector<SourceUnit> ingest_corpus(const std::vector<std::string>& roots, Language language,
                                      const IngestFilters& filters, RunStats& stats);

struct AugmentConfig {
    Language language = Language::C;
    std::vector<std::string> inputs;
    std::string out_path;
    std::string vocab_path;        // trained and written here when absent
    std::string type_vocab_path;   // default: vocab_path + ".types"
    uint64_t seed = 0;
    int max_compose = 3;
    int edit_bound = 8;
    int vocab_size = 2000;
    IngestFilters filters;
    bool compile_check = false;
    std::string flow_dot_dir;      // empty → no DOT dumps
    std::string cwe_map_path;      // empty → builtin table
    std::string allowlist_path;    // empty → builtin list; file extends it
    int workers = 0;               // 0 → hardware; any count gives identical output
};

struct BuildContext {
    const SubwordTokenizer* tokenizer = nullptr;
    const TypeVocab* types = nullptr;
    const std::set<std::string>* allowlist = nullptr;
    const CweMap* cwe_map = nullptr;
    std::vector<std::string> identifier_pool;
    int max_compose = 3;
    int edit_bound = 8;
    bool compile_check = false;
};

struct BuildOutcome {
    std::optional<DatasetRecord> record;
    std::string skip_reason;  // parse_failed | no_positive_site | no_negative_site | compile_failed
    std::vector<TransformKind> pos_transforms;  // set when record is present
};

// Derives the unit's reproducible seed from (master seed, unit id).
uint64_t unit_seed(uint64_t master_seed, const std::string& unit_id);

BuildOutcome build_triplet(const SourceUnit& unit, uint64_t master_seed,
                           const BuildContext& ctx);

// Newline-delimited JSON, one record per line, schema documented in the
// README. Returns per-record statistics (emitted counts only).
RunStats emit_dataset(const std::vector<DatasetRecord>& records, const std::string& out_path);
std::vector<DatasetRecord> load_dataset(const std::string& path);

std::string record_to_json_line(const DatasetRecord& record);
DatasetRecord record_from_json_line(const std::string& line);

// End-to-end corpus run: ingest, train-or-load vocabularies, build triplets,
// emit the dataset, and return the full accounting.
RunStats run_augment(const AugmentConfig& config);

}  // namespace cct
