#include "cct/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cct/error.hpp"
#include "cct/flow.hpp"
#include "cct/parser.hpp"

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace cct {

std::vector<int> MaskPlan::all_positions() const {
    std::vector<int> out;
    out.reserve(masked.size() + replaced.size() + unchanged.size());
    out.insert(out.end(), masked.begin(), masked.end());
    out.insert(out.end(), replaced.begin(), replaced.end());
    out.insert(out.end(), unchanged.begin(), unchanged.end());
    std::sort(out.begin(), out.end());
    return out;
}

MaskPlan plan_masks(const CodeSequence& seq, Rng& rng, int code_vocab_size,
                    int type_vocab_size) {
    std::vector<int> maskable;
    for (size_t i = 0; i < seq.token_of.size(); ++i)
        if (seq.token_of[i] >= 0) maskable.push_back(static_cast<int>(i));
    if (maskable.empty()) throw ConfigError("sequence has no maskable positions");

    const size_t budget = std::max<size_t>(
        1, static_cast<size_t>(std::floor(0.15 * static_cast<double>(maskable.size()) + 0.5)));

    // partial Fisher–Yates: the first `budget` entries become the selection
    for (size_t i = 0; i < budget; ++i) {
        const size_t j = i + rng.index(maskable.size() - i);
        std::swap(maskable[i], maskable[j]);
    }
    std::vector<int> selected(maskable.begin(), maskable.begin() + static_cast<long>(budget));
    std::sort(selected.begin(), selected.end());

    MaskPlan plan;
    plan.seq_len = static_cast<int>(seq.size());
    for (const int pos : selected) {
        const double roll = rng.real();
        if (roll < 0.8) {
            plan.masked.push_back(pos);
        } else if (roll < 0.9) {
            plan.replaced.push_back(pos);
            const int code_id = SubwordTokenizer::kSpecialCount +
                                static_cast<int>(rng.below(static_cast<uint64_t>(
                                    code_vocab_size - SubwordTokenizer::kSpecialCount)));
            const int type_id = TypeVocab::kSpecialCount +
                                static_cast<int>(rng.below(static_cast<uint64_t>(
                                    type_vocab_size - TypeVocab::kSpecialCount)));
            plan.replacement_ids.push_back({code_id, type_id});
        } else {
            plan.unchanged.push_back(pos);
        }
    }
    return plan;
}

std::pair<std::vector<int>, std::vector<int>> apply_masks(const CodeSequence& code,
                                                          const TypeSequence& type,
                                                          const MaskPlan& plan) {
    if (static_cast<size_t>(plan.seq_len) != code.size() || code.size() != type.size())
        throw std::out_of_range("mask plan length disagrees with sequence");
    std::vector<int> masked_code = code.ids;
    std::vector<int> masked_type = type.ids;
    for (const int pos : plan.masked) {
        masked_code[static_cast<size_t>(pos)] = SubwordTokenizer::kMask;
        masked_type[static_cast<size_t>(pos)] = TypeVocab::kMask;
    }
    for (size_t i = 0; i < plan.replaced.size(); ++i) {
        const int pos = plan.replaced[i];
        masked_code[static_cast<size_t>(pos)] = plan.replacement_ids[i][0];
        masked_type[static_cast<size_t>(pos)] = plan.replacement_ids[i][1];
    }
    return {std::move(masked_code), std::move(masked_type)};
}

int64_t RunStats::skipped_total() const {
    int64_t total = 0;
    for (const auto& [reason, count] : skipped) total += count;
    return total;
}

std::string RunStats::to_json() const {
    ordered_json j;
    j["files_scanned"] = files_scanned;
    j["io_errors"] = io_errors;
    j["functions_extracted"] = functions_extracted;
    j["parse_failures"] = parse_failures;
    j["filtered_out"] = filtered_out;
    j["ingested"] = ingested;
    j["emitted"] = emitted;
    j["skipped"] = skipped;
    j["positive_kinds"] = positive_kinds;
    j["bug_families"] = bug_families;
    return j.dump();
}

namespace {

bool has_extension(const fs::path& p, Language lang) {
    const std::string ext = p.extension().string();
    return lang == Language::C ? ext == ".c" : ext == ".java";
}

}  // namespace

std::vector<SourceUnit> ingest_corpus(const std::vector<std::string>& roots, Language language,
                                      const IngestFilters& filters, RunStats& stats) {
    if (language == Language::Java)
        throw ConfigError("java grammar is not enabled in this build");

    std::vector<std::string> files;
    for (const std::string& root : roots) {
        std::error_code ec;
        if (fs::is_directory(root, ec)) {
            for (auto it = fs::recursive_directory_iterator(root, ec);
                 it != fs::recursive_directory_iterator(); it.increment(ec)) {
                if (ec) {
                    ++stats.io_errors;
                    break;
                }
                if (it->is_regular_file(ec) && has_extension(it->path(), language))
                    files.push_back(it->path().string());
            }
        } else if (fs::is_regular_file(root, ec)) {
            if (has_extension(root, language)) files.push_back(root);
        } else {
            ++stats.io_errors;
        }
    }
    std::sort(files.begin(), files.end());

    std::vector<SourceUnit> units;
    for (const std::string& path : files) {
        ++stats.files_scanned;
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            ++stats.io_errors;
            continue;
        }
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string normalized = normalize_source(buf.str());
        for (const Span range : extract_function_ranges(normalized)) {
            ++stats.functions_extracted;
            SourceUnit unit;
            unit.id = path + ":" + std::to_string(range.begin);
            unit.language = language;
            unit.text = normalized.substr(range.begin, range.size());
            unit.origin_path = path;
            try {
                const SyntaxTree tree = parse_source(unit);
                const int token_count = static_cast<int>(tree.token_count());
                if ((filters.min_tokens > 0 && token_count < filters.min_tokens) ||
                    (filters.max_tokens > 0 && token_count > filters.max_tokens)) {
                    ++stats.filtered_out;
                    continue;
                }
            } catch (const ParseError&) {
                ++stats.parse_failures;
                continue;
            }
            units.push_back(std::move(unit));
        }
    }
    stats.ingested = static_cast<int64_t>(units.size());
    return units;
}

uint64_t unit_seed(uint64_t master_seed, const std::string& unit_id) {
    return Rng(master_seed ^ Rng::hash_string(unit_id)).next_u64();
}

namespace {

SequencedUnit sequence_unit(const SourceUnit& unit, const SyntaxTree& tree,
                            const BuildContext& ctx) {
    SequencedUnit out;
    out.id = unit.id;
    out.text = unit.text;
    auto [code, type] = build_sequences(tree.tokens, *ctx.tokenizer, *ctx.types);
    out.code_ids = std::move(code.ids);
    out.type_ids = std::move(type.ids);
    return out;
}

bool compile_checks(const std::vector<const SourceUnit*>& units) {
    static int compiler_ok = -1;
    if (compiler_ok < 0)
        compiler_ok = std::system("cc --version > /dev/null 2>&1") == 0 ? 1 : 0;
    if (!compiler_ok) throw ConfigError("--compile-check requested but no 'cc' available");
    for (const SourceUnit* u : units) {
        const fs::path tmp =
            fs::temp_directory_path() /
            ("cct_cc_" + std::to_string(Rng::hash_string(u->id + u->text)) + ".c");
        {
            std::ofstream out(tmp);
            out << u->text << "\n";
        }
        const std::string cmd =
            "cc -fsyntax-only -std=c11 -w " + tmp.string() + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        std::error_code ec;
        fs::remove(tmp, ec);
        if (rc != 0) return false;
    }
    return true;
}

}  // namespace

BuildOutcome build_triplet(const SourceUnit& unit, uint64_t master_seed,
                           const BuildContext& ctx) {
    const uint64_t seed = unit_seed(master_seed, unit.id);
    const Rng base(seed);

    UnitAnalysis analysis;
    try {
        analysis = analyze_unit(unit, *ctx.allowlist);
    } catch (const ParseError&) {
        return BuildOutcome{std::nullopt, "parse_failed", {}};
    }

    Rng pos_rng = base.child(1);
    PositiveOptions pos_opts;
    pos_opts.max_compose = ctx.max_compose;
    pos_opts.identifier_pool = ctx.identifier_pool;
    pos_opts.library_allowlist = ctx.allowlist;
    PositiveResult pos = generate_positive(unit, analysis, pos_rng, pos_opts);
    if (!pos.code) return BuildOutcome{std::nullopt, pos.skip_reason, {}};

    Rng neg_rng = base.child(2);
    NegativeOptions neg_opts;
    neg_opts.edit_bound = ctx.edit_bound;
    neg_opts.cwe_map = ctx.cwe_map;
    NegativeResult neg = generate_negative(unit, analysis, neg_rng, neg_opts);
    if (!neg.code) return BuildOutcome{std::nullopt, neg.skip_reason, {}};

    if (ctx.compile_check &&
        !compile_checks({&unit, &pos.code->unit, &neg.code->unit}))
        return BuildOutcome{std::nullopt, "compile_failed", {}};

    DatasetRecord record;
    record.triplet.seed = seed;
    const auto [x_code, x_type] = build_sequences(analysis.tree.tokens, *ctx.tokenizer, *ctx.types);
    record.triplet.x.id = unit.id;
    record.triplet.x.text = unit.text;
    record.triplet.x.code_ids = x_code.ids;
    record.triplet.x.type_ids = x_type.ids;
    record.triplet.x_pos = sequence_unit(pos.code->unit, parse_source(pos.code->unit), ctx);
    record.triplet.x_neg = sequence_unit(neg.code->unit, parse_source(neg.code->unit), ctx);
    record.triplet.pos_transforms = pos.code->provenance;
    record.triplet.bug = neg.tag;

    Rng mask_rng = base.child(3);
    record.mask = plan_masks(x_code, mask_rng, ctx.tokenizer->size(), ctx.types->size());

    return BuildOutcome{std::move(record), "", pos.code->provenance};
}

namespace {

ordered_json member_json(const SequencedUnit& m) {
    ordered_json j;
    j["text"] = m.text;
    j["code_ids"] = m.code_ids;
    j["type_ids"] = m.type_ids;
    return j;
}

void member_from_json(const ordered_json& j, SequencedUnit& m) {
    m.text = j.at("text").get<std::string>();
    m.code_ids = j.at("code_ids").get<std::vector<int>>();
    m.type_ids = j.at("type_ids").get<std::vector<int>>();
}

}  // namespace

std::string record_to_json_line(const DatasetRecord& record) {
    const Triplet& t = record.triplet;
    ordered_json j;
    j["id"] = t.x.id;
    j["seed"] = t.seed;
    j["x"] = member_json(t.x);
    ordered_json pos = member_json(t.x_pos);
    ordered_json transforms = ordered_json::array();
    for (const TransformKind k : t.pos_transforms) transforms.push_back(transform_kind_name(k));
    pos["transforms"] = std::move(transforms);
    j["x_pos"] = std::move(pos);
    ordered_json neg = member_json(t.x_neg);
    neg["bug"] = ordered_json{{"family", transform_kind_name(t.bug.family)},
                              {"cwes", t.bug.cwe_ids}};
    j["x_neg"] = std::move(neg);
    ordered_json mask;
    mask["loc_m"] = record.mask.masked;
    mask["loc_r"] = record.mask.replaced;
    mask["loc_u"] = record.mask.unchanged;
    ordered_json repl = ordered_json::object();
    for (size_t i = 0; i < record.mask.replaced.size(); ++i)
        repl[std::to_string(record.mask.replaced[i])] = record.mask.replacement_ids[i];
    mask["repl"] = std::move(repl);
    mask["len"] = record.mask.seq_len;
    j["mask"] = std::move(mask);
    return j.dump();
}

DatasetRecord record_from_json_line(const std::string& line) {
    const ordered_json j = ordered_json::parse(line);
    DatasetRecord r;
    Triplet& t = r.triplet;
    t.seed = j.at("seed").get<uint64_t>();
    member_from_json(j.at("x"), t.x);
    t.x.id = j.at("id").get<std::string>();
    member_from_json(j.at("x_pos"), t.x_pos);
    t.x_pos.id = t.x.id + "#pos";
    for (const auto& name : j.at("x_pos").at("transforms"))
        t.pos_transforms.push_back(transform_kind_from_name(name.get<std::string>()));
    member_from_json(j.at("x_neg"), t.x_neg);
    t.x_neg.id = t.x.id + "#neg";
    t.bug.family =
        transform_kind_from_name(j.at("x_neg").at("bug").at("family").get<std::string>());
    t.bug.cwe_ids = j.at("x_neg").at("bug").at("cwes").get<std::vector<std::string>>();
    r.mask.masked = j.at("mask").at("loc_m").get<std::vector<int>>();
    r.mask.replaced = j.at("mask").at("loc_r").get<std::vector<int>>();
    r.mask.unchanged = j.at("mask").at("loc_u").get<std::vector<int>>();
    r.mask.seq_len = j.at("mask").at("len").get<int>();
    r.mask.replacement_ids.resize(r.mask.replaced.size());
    const auto& repl = j.at("mask").at("repl");
    for (size_t i = 0; i < r.mask.replaced.size(); ++i) {
        const auto& pair = repl.at(std::to_string(r.mask.replaced[i]));
        r.mask.replacement_ids[i] = {pair.at(0).get<int>(), pair.at(1).get<int>()};
    }
    return r;
}

RunStats emit_dataset(const std::vector<DatasetRecord>& records, const std::string& out_path) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write dataset: " + out_path);
    RunStats stats;
    for (const DatasetRecord& r : records) {
        out << record_to_json_line(r) << "\n";
        ++stats.emitted;
        for (const TransformKind k : r.triplet.pos_transforms)
            ++stats.positive_kinds[transform_kind_name(k)];
        ++stats.bug_families[transform_kind_name(r.triplet.bug.family)];
    }
    if (!out) throw IoError("write failed: " + out_path);
    return stats;
}

std::vector<DatasetRecord> load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read dataset: " + path);
    std::vector<DatasetRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(record_from_json_line(line));
    }
    return out;
}

namespace {

std::string sanitize_for_filename(const std::string& id) {
    std::string out;
    for (const char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
    return out;
}

}  // namespace

RunStats run_augment(const AugmentConfig& config) {
    RunStats stats;
    std::vector<SourceUnit> units =
        ingest_corpus(config.inputs, config.language, config.filters, stats);

    SubwordTokenizer tokenizer;
    if (fs::exists(config.vocab_path)) {
        tokenizer = SubwordTokenizer::load(config.vocab_path);
    } else {
        tokenizer = train_subword_tokenizer(units, config.vocab_size);
        tokenizer.save(config.vocab_path);
    }
    const std::string type_path =
        config.type_vocab_path.empty() ? config.vocab_path + ".types" : config.type_vocab_path;
    TypeVocab types;
    if (fs::exists(type_path)) {
        types = TypeVocab::load(type_path);
    } else {
        types = TypeVocab::scan_corpus(units);
        types.save(type_path);
    }

    std::set<std::string> allowlist = default_library_allowlist();
    if (!config.allowlist_path.empty())
        for (const std::string& name : load_allowlist(config.allowlist_path))
            allowlist.insert(name);
    CweMap cwe = config.cwe_map_path.empty() ? default_cwe_map() : load_cwe_map(config.cwe_map_path);

    // identifier pool for random_pool renaming: every identifier in the
    // corpus except library names
    std::set<std::string> pool_set;
    for (const SourceUnit& u : units) {
        try {
            for (const Token& tok : lex(u.text))
                if (tok.term == TerminalType::Identifier && !allowlist.count(tok.text))
                    pool_set.insert(tok.text);
        } catch (const ParseError&) {
            continue;
        }
    }

    BuildContext ctx;
    ctx.tokenizer = &tokenizer;
    ctx.types = &types;
    ctx.allowlist = &allowlist;
    ctx.cwe_map = &cwe;
    ctx.identifier_pool.assign(pool_set.begin(), pool_set.end());
    ctx.max_compose = config.max_compose;
    ctx.edit_bound = config.edit_bound;
    ctx.compile_check = config.compile_check;

    // per-unit construction is pure given (unit, seed), so workers can build
    // in parallel; the writer consumes results in sorted ingest order
    const int workers = config.workers > 0
                            ? config.workers
                            : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    std::vector<BuildOutcome> outcomes(units.size());
    if (workers <= 1 || units.size() < 2) {
        for (size_t i = 0; i < units.size(); ++i)
            outcomes[i] = build_triplet(units[i], config.seed, ctx);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (size_t i = static_cast<size_t>(w); i < units.size();
                     i += static_cast<size_t>(workers))
                    outcomes[i] = build_triplet(units[i], config.seed, ctx);
            });
        for (auto& t : pool) t.join();
    }

    std::vector<DatasetRecord> records;
    for (size_t i = 0; i < units.size(); ++i) {
        const SourceUnit& unit = units[i];
        BuildOutcome& outcome = outcomes[i];
        if (!outcome.record) {
            ++stats.skipped[outcome.skip_reason];
            continue;
        }
        if (!config.flow_dot_dir.empty()) {
            std::error_code ec;
            fs::create_directories(config.flow_dot_dir, ec);
            try {
                const UnitAnalysis a = analyze_unit(unit, allowlist);
                std::ofstream dot(fs::path(config.flow_dot_dir) /
                                  (sanitize_for_filename(unit.id) + ".dot"));
                dot << flow_graph_to_dot(a.tree, a.scopes, a.graph);
            } catch (const ParseError&) {
            }
        }
        records.push_back(std::move(*outcome.record));
    }

    const RunStats emit_stats = emit_dataset(records, config.out_path);
    stats.emitted = emit_stats.emitted;
    stats.positive_kinds = emit_stats.positive_kinds;
    stats.bug_families = emit_stats.bug_families;
    return stats;
}

}  // namespace cct
