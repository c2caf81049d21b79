// End-to-end acceptance suite. Each numbered criterion prints one PASS/FAIL
// line; the exit code is the number of failures. Heavier stages (corpus
// build, CLI runs, desk-scale training) reuse one shared working directory
// under the system temp root.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cct/error.hpp"
#include "cct/kernel/gradcheck.hpp"
#include "cct/kernel/train.hpp"
#include "cct/menu.hpp"
#include "cct/parser.hpp"
#include "cct/pipeline.hpp"
#include "cct/token_diff.hpp"
#include "support/fixture_gen.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace cct;
using namespace cct::kernel;
using Clock = std::chrono::steady_clock;

#ifndef CCT_AUGMENT_BIN
#define CCT_AUGMENT_BIN "augment"
#endif
#ifndef CCT_PRETRAIN_BIN
#define CCT_PRETRAIN_BIN "pretrain"
#endif

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what, double seconds) {
    std::printf("%s  [%d] %s  (%.1fs)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
                seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cmd(const std::string& cmd) {
    return std::system((cmd + " > /dev/null 2>&1").c_str());
}

struct Workspace {
    fs::path root;
    fs::path corpus;
    fs::path dataset;
    fs::path vocab;
    fs::path type_vocab;
    std::vector<DatasetRecord> records;
    SubwordTokenizer tokenizer;
    TypeVocab types;
    RunStats stats;
};

Workspace build_workspace() {
    Workspace ws;
    ws.root = fs::temp_directory_path() / "cct_acceptance";
    fs::remove_all(ws.root);
    fs::create_directories(ws.root);
    ws.corpus = ws.root / "corpus";
    ws.dataset = ws.root / "triplets.jsonl";
    ws.vocab = ws.root / "tok.model";
    ws.type_vocab = ws.root / "tok.model.types";

    testsupport::FixtureOptions opt;
    opt.files = 520;
    opt.functions_per_file = 5;  // ≥ 500 functions, ≥ 2000 triplets after skips
    opt.seed = 20260811;
    testsupport::write_fixture_corpus(ws.corpus.string(), opt);

    AugmentConfig cfg;
    cfg.inputs = {ws.corpus.string()};
    cfg.out_path = ws.dataset.string();
    cfg.vocab_path = ws.vocab.string();
    cfg.type_vocab_path = ws.type_vocab.string();
    cfg.vocab_size = 2000;
    cfg.seed = 7;
    ws.stats = run_augment(cfg);
    ws.records = load_dataset(ws.dataset.string());
    ws.tokenizer = SubwordTokenizer::load(ws.vocab.string());
    ws.types = TypeVocab::load(ws.type_vocab.string());
    return ws;
}

SourceUnit member_unit(const SequencedUnit& m) {
    return SourceUnit{m.id, Language::C, m.text, "acceptance"};
}

// top-level statements of a canonicalized unit, as joined token strings
std::multiset<std::string> canonical_statement_multiset(const SourceUnit& unit) {
    const std::vector<std::string> stream = testsupport::canonical_token_stream(unit);
    std::multiset<std::string> out;
    int depth = 0;
    std::string current;
    for (const std::string& tok : stream) {
        if (tok == "{") {
            ++depth;
            if (depth == 1) continue;  // the function body brace
        }
        if (tok == "}") {
            --depth;
            if (depth == 0) break;
        }
        if (depth >= 1) {
            current += tok;
            current += ' ';
            if (depth == 1 && (tok == ";" || tok == "}")) {
                out.insert(current);
                current.clear();
            }
        }
    }
    if (!current.empty()) out.insert(current);
    return out;
}

int resolved_local_uses(const SourceUnit& unit) {
    const SyntaxTree tree = parse_source(unit);
    const ScopeTable scopes = resolve_scopes(tree);
    int n = 0;
    for (const Use& u : scopes.uses)
        if (u.def >= 0) ++n;
    return n;
}

// ---------------------------------------------------------------- criteria

void criterion_1_alignment(const Workspace& ws) {
    const auto t0 = Clock::now();
    bool ok = ws.records.size() >= 500;
    size_t checked = 0;
    for (const DatasetRecord& r : ws.records) {
        for (const SequencedUnit* m : {&r.triplet.x, &r.triplet.x_pos, &r.triplet.x_neg}) {
            if (m->code_ids.size() != m->type_ids.size()) ok = false;
            // recomputing from text must reproduce the stored aligned streams
            const SyntaxTree tree = parse_source(member_unit(*m));
            const auto [code, type] = build_sequences(tree.tokens, ws.tokenizer, ws.types);
            if (code.ids != m->code_ids || type.ids != m->type_ids) ok = false;
            // same-token type sharing
            for (size_t i = 1; i + 1 < code.size(); ++i)
                if (code.token_of[i] == code.token_of[i - 1] &&
                    type.ids[i] != type.ids[i - 1])
                    ok = false;
        }
        // mask alignment: one plan drives the same positions in both streams
        CodeSequence code;
        code.ids = r.triplet.x.code_ids;
        TypeSequence type;
        type.ids = r.triplet.x.type_ids;
        const auto [mcode, mtype] = apply_masks(code, type, r.mask);
        for (const int p : r.mask.masked) {
            if (mcode[static_cast<size_t>(p)] != SubwordTokenizer::kMask) ok = false;
            if (mtype[static_cast<size_t>(p)] != TypeVocab::kMask) ok = false;
        }
        for (size_t i = 0; i < r.mask.replaced.size(); ++i) {
            const auto p = static_cast<size_t>(r.mask.replaced[i]);
            if (mcode[p] != r.mask.replacement_ids[i][0]) ok = false;
            if (mtype[p] != r.mask.replacement_ids[i][1]) ok = false;
        }
        for (const int p : r.mask.unchanged) {
            if (mcode[static_cast<size_t>(p)] != code.ids[static_cast<size_t>(p)]) ok = false;
            if (mtype[static_cast<size_t>(p)] != type.ids[static_cast<size_t>(p)]) ok = false;
        }
        ++checked;
    }
    const double secs = seconds_since(t0);
    std::ostringstream what;
    what << "alignment suite: " << checked << " triplets from " << ws.stats.ingested
         << " ingested functions, all streams aligned";
    report(1, ok && checked >= 500 && secs < 60.0, what.str(), secs);
}

void criterion_2_positive_oracle(const Workspace& ws) {
    const auto t0 = Clock::now();
    size_t rename_only = 0, with_permute = 0;
    bool ok = true;
    for (const DatasetRecord& r : ws.records) {
        const SourceUnit x = member_unit(r.triplet.x);
        const SourceUnit pos = member_unit(r.triplet.x_pos);
        const bool has_permute =
            std::find(r.triplet.pos_transforms.begin(), r.triplet.pos_transforms.end(),
                      TransformKind::StmtPermute) != r.triplet.pos_transforms.end();
        if (!has_permute) {
            ++rename_only;
            if (testsupport::canonical_token_stream(x) !=
                testsupport::canonical_token_stream(pos))
                ok = false;
        } else {
            ++with_permute;
            if (canonical_statement_multiset(x) != canonical_statement_multiset(pos)) ok = false;
            if (resolved_local_uses(x) != resolved_local_uses(pos)) ok = false;
        }
    }
    std::ostringstream what;
    what << "positive oracle: " << rename_only << " rename-only alpha-equivalent, "
         << with_permute << " permutations preserve statements and def-before-use";
    report(2, ok && rename_only > 0 && with_permute > 0, what.str(), seconds_since(t0));
}

void criterion_3_negative_suite(const Workspace& ws) {
    const auto t0 = Clock::now();
    bool ok = true;
    const CweMap expected = {
        {TransformKind::DataType,
         {"CWE-190", "CWE-191", "CWE-680", "CWE-686", "CWE-704", "CWE-843"}},
        {TransformKind::Pointer, {"CWE-476", "CWE-824", "CWE-825"}},
        {TransformKind::Conditional,
         {"CWE-120", "CWE-121", "CWE-122", "CWE-124", "CWE-125", "CWE-126", "CWE-129",
          "CWE-787", "CWE-788", "CWE-823"}},
        {TransformKind::VarMisuse, {"CWE-706"}},
        {TransformKind::ValueMisuse, {"CWE-369", "CWE-456", "CWE-457", "CWE-908"}},
        {TransformKind::CallMutation,
         {"CWE-683", "CWE-685", "CWE-686", "CWE-687", "CWE-688"}},
    };
    if (default_cwe_map() != expected) ok = false;
    if (expected.size() != 6) ok = false;

    int max_dist = 0;
    for (const DatasetRecord& r : ws.records) {
        SourceUnit neg = member_unit(r.triplet.x_neg);
        try {
            parse_source(neg);
        } catch (const ParseError&) {
            ok = false;
        }
        const int dist = testsupport::levenshtein_reference(
            lex_token_texts(r.triplet.x.text), lex_token_texts(neg.text));
        if (dist < 1 || dist > 8) ok = false;
        max_dist = std::max(max_dist, dist);
        if (r.triplet.bug.cwe_ids != expected.at(r.triplet.bug.family)) ok = false;
    }
    std::ostringstream what;
    what << "negative suite: " << ws.records.size()
         << " bug variants re-parse, edit distance within [1,8] (max " << max_dist
         << "), CWE table exact";
    report(3, ok, what.str(), seconds_since(t0));
}

void criterion_4_mask_statistics(const Workspace& ws) {
    const auto t0 = Clock::now();
    Rng rng(515);
    int64_t maskable_total = 0, selected = 0, masked = 0, replaced = 0, unchanged = 0;
    for (int i = 0; i < 10000; ++i) {
        const DatasetRecord& r = ws.records[static_cast<size_t>(i) % ws.records.size()];
        const SourceUnit unit = member_unit(r.triplet.x);
        // rebuild the sequence so token_of is available for planning
        const SyntaxTree tree = parse_source(unit);
        const auto [code, type] = build_sequences(tree.tokens, ws.tokenizer, ws.types);
        const MaskPlan plan = plan_masks(code, rng, ws.tokenizer.size(), ws.types.size());
        maskable_total += static_cast<int64_t>(code.size()) - 2;
        selected += static_cast<int64_t>(plan.all_positions().size());
        masked += static_cast<int64_t>(plan.masked.size());
        replaced += static_cast<int64_t>(plan.replaced.size());
        unchanged += static_cast<int64_t>(plan.unchanged.size());
    }
    const double frac = double(selected) / double(maskable_total);
    const double dm = double(masked) / double(selected);
    const double dr = double(replaced) / double(selected);
    const double du = double(unchanged) / double(selected);
    const bool ok = frac >= 0.14 && frac <= 0.16 && dm >= 0.78 && dm <= 0.82 && dr >= 0.08 &&
                    dr <= 0.12 && du >= 0.08 && du <= 0.12;
    char what[160];
    std::snprintf(what, sizeof(what),
                  "mask statistics over 10000 plans: selected %.4f, split %.4f/%.4f/%.4f", frac,
                  dm, dr, du);
    report(4, ok, what, seconds_since(t0));
}

void criterion_5_closed_forms() {
    const auto t0 = Clock::now();
    bool ok = true;

    ContrastBatch batch;
    batch.h.resize(1, 2);
    batch.h_pos.resize(1, 2);
    batch.h_neg.resize(1, 2);
    batch.h << 0.4, -1.1;
    batch.h_pos << 0.9, 2.0;
    if (std::abs(clr_loss(batch, 0.05, ClrVariant::PositiveOnly)) > 1e-9) ok = false;
    batch.h << 1, 0;
    batch.h_pos << 0, 1;
    batch.h_neg << 0, 1;
    if (std::abs(clr_loss(batch, 0.05, ClrVariant::HardNegative) - std::log(2.0)) > 1e-9)
        ok = false;
    batch.h_pos << 1, 0;
    batch.h_neg << 0, 1;
    if (std::abs(clr_loss(batch, 0.05, ClrVariant::HardNegative) -
                 std::log1p(std::exp(-20.0))) > 1e-9)
        ok = false;

    ModelConfig mc;
    mc.code_vocab = 2000;
    mc.type_vocab = 300;
    mc.dim = 8;
    mc.layers = 0;
    mc.max_len = 8;
    EncoderParams params = EncoderParams::zeros(mc);
    MatrixXd h = MatrixXd::Random(6, mc.dim);
    MaskPlan plan;
    plan.masked = {2};
    plan.seq_len = 6;
    const std::vector<int> originals = {0, 1, 2, 3, 4, 5};
    if (std::abs(mlm_loss(h, plan, originals, params, nullptr, nullptr) - std::log(2000.0)) >
        1e-9)
        ok = false;

    // uniform predictor perplexity equals |V|
    std::vector<DatasetRecord> tiny(1);
    tiny[0].triplet.x.code_ids = {2, 7, 8, 9, 10, 3};
    tiny[0].triplet.x.type_ids = {2, 6, 6, 6, 6, 3};
    tiny[0].triplet.x_pos = tiny[0].triplet.x;
    tiny[0].triplet.x_neg = tiny[0].triplet.x;
    tiny[0].mask = plan;
    ModelConfig uc = mc;
    uc.dim = 8;
    uc.layers = 1;
    uc.heads = 2;
    Rng rng(3);
    EncoderParams up = EncoderParams::randomized(uc, rng, 0.2);
    up.w_mlm.setZero();
    up.b_mlm.setZero();
    if (std::abs(perplexity(up, tiny) - 2000.0) > 1e-9) ok = false;

    report(5, ok,
           "loss closed forms: CLR {0, ln 2, ln(1+e^-20)}, MLM ln|V|, perplexity |V| at 1e-9",
           seconds_since(t0));
}

void criterion_6_grad_checks() {
    const auto t0 = Clock::now();
    ModelConfig c;
    c.code_vocab = 9;
    c.type_vocab = 6;
    c.dim = 4;
    c.layers = 1;
    c.heads = 2;
    c.max_len = 12;
    Rng rng(606);
    double worst = 0.0;
    int coords = 0;

    {  // MLM and NT-MLM through the encoder
        EncoderParams params = EncoderParams::randomized(c, rng, 0.3);
        const std::vector<int> code = {2, 5, 1, 6, 3, 0, 7};
        const std::vector<int> type = {1, 3, 2, 4, 0, 1, 5};
        MaskPlan plan;
        plan.masked = {1, 4};
        plan.replaced = {2};
        plan.replacement_ids = {{1, 1}};
        plan.unchanged = {5};
        plan.seq_len = 7;
        for (const bool with_types : {false, true}) {
            auto loss_fn = [&](EncoderParams* grads) {
                ForwardCache cache;
                const MatrixXd h = encode_sequence(code, type, params, grads ? &cache : nullptr);
                if (!grads) {
                    double l = mlm_loss(h, plan, code, params, nullptr, nullptr);
                    if (with_types) l += ntmlm_loss(h, plan, type, params, nullptr, nullptr);
                    return l;
                }
                MatrixXd d_h = MatrixXd::Zero(h.rows(), h.cols());
                double l = mlm_loss(h, plan, code, params, &d_h, grads);
                if (with_types) l += ntmlm_loss(h, plan, type, params, &d_h, grads);
                encode_backward(cache, params, d_h, *grads);
                return l;
            };
            Rng check(11 + static_cast<uint64_t>(with_types));
            const GradCheckReport rep = grad_check(loss_fn, params, 60, 1e-6, check);
            worst = std::max(worst, rep.max_rel_error);
            coords += rep.coordinates;
        }
    }
    {  // CLR through the encoder, N = 2
        EncoderParams params = EncoderParams::randomized(c, rng, 0.3);
        const std::vector<std::vector<int>> codes = {{2, 1, 3, 4}, {5, 0, 6, 1}};
        const std::vector<std::vector<int>> poss = {{2, 1, 4, 3}, {5, 0, 1, 6}};
        const std::vector<std::vector<int>> negs = {{2, 7, 3, 4}, {5, 0, 6, 8}};
        const std::vector<int> types = {0, 1, 2, 3};
        auto loss_fn = [&](EncoderParams* grads) {
            std::vector<ForwardCache> caches(6);
            ContrastBatch batch;
            batch.h.resize(2, c.dim);
            batch.h_pos.resize(2, c.dim);
            batch.h_neg.resize(2, c.dim);
            for (int i = 0; i < 2; ++i) {
                batch.h.row(i) =
                    encode_sequence(codes[static_cast<size_t>(i)], types, params,
                                    grads ? &caches[static_cast<size_t>(i) * 3] : nullptr)
                        .row(0);
                batch.h_pos.row(i) =
                    encode_sequence(poss[static_cast<size_t>(i)], types, params,
                                    grads ? &caches[static_cast<size_t>(i) * 3 + 1] : nullptr)
                        .row(0);
                batch.h_neg.row(i) =
                    encode_sequence(negs[static_cast<size_t>(i)], types, params,
                                    grads ? &caches[static_cast<size_t>(i) * 3 + 2] : nullptr)
                        .row(0);
            }
            if (!grads) return clr_loss(batch, 0.05, ClrVariant::HardNegative);
            ContrastBatch d_batch;
            const double loss = clr_loss(batch, 0.05, ClrVariant::HardNegative, &d_batch);
            for (int i = 0; i < 2; ++i) {
                MatrixXd d_h = MatrixXd::Zero(4, c.dim);
                d_h.row(0) = d_batch.h.row(i);
                encode_backward(caches[static_cast<size_t>(i) * 3], params, d_h, *grads);
                d_h.setZero();
                d_h.row(0) = d_batch.h_pos.row(i);
                encode_backward(caches[static_cast<size_t>(i) * 3 + 1], params, d_h, *grads);
                d_h.setZero();
                d_h.row(0) = d_batch.h_neg.row(i);
                encode_backward(caches[static_cast<size_t>(i) * 3 + 2], params, d_h, *grads);
            }
            return loss;
        };
        Rng check(21);
        const GradCheckReport rep = grad_check(loss_fn, params, 60, 1e-6, check);
        worst = std::max(worst, rep.max_rel_error);
        coords += rep.coordinates;
    }

    const double secs = seconds_since(t0);
    char what[160];
    std::snprintf(what, sizeof(what),
                  "gradient checks: %d sampled coordinates across the three losses, max rel "
                  "error %.2e",
                  coords, worst);
    report(6, worst < 1e-5 && coords >= 100 && secs < 120.0, what, secs);
}

void criterion_7_contrastive_separation(const Workspace& ws) {
    const auto t0 = Clock::now();
    TrainConfig base;
    base.model.dim = 64;
    base.model.layers = 2;
    base.model.heads = 4;
    base.model.max_len = 160;
    base.model.code_vocab = ws.tokenizer.size();
    base.model.type_vocab = ws.types.size();
    base.tau = 0.05;
    base.lr = 3e-4;
    base.epochs = CCT_ACCEPT_EPOCHS;
    base.batch_size = 8;
    base.workers = 2;
    base.heldout_frac = 0.1;

    auto run = [&](const std::string& variant, uint64_t seed) {
        TrainConfig cfg = base;
        cfg.variant = variant;
        cfg.seed = seed;
        const auto t_run = Clock::now();
        const TrainResult res = train_loop(ws.records, cfg);
        std::printf("   .. %-16s seed %llu: margin %.3f ppl %.2f (%.0fs)\n", variant.c_str(),
                    static_cast<unsigned long long>(seed), res.curves.back().heldout_margin,
                    res.curves.back().heldout_ppl, seconds_since(t_run));
        std::fflush(stdout);
        return res;
    };

    bool ok = ws.stats.emitted >= 2000;

    std::vector<double> ppl_nt, ppl_tok;
    double margin_nt = 0.0;
    double train_seconds = 0.0;
    for (const uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto t_run = Clock::now();
        const TrainResult nt = run("mlm+clr+-+ntmlm", seed);
        train_seconds = std::max(train_seconds, seconds_since(t_run));
        ppl_nt.push_back(nt.curves.back().heldout_ppl);
        if (seed == 1) margin_nt = nt.curves.back().heldout_margin;
        const TrainResult tok = run("mlm+clr+-", seed);
        ppl_tok.push_back(tok.curves.back().heldout_ppl);
    }
    const TrainResult mlm_only = run("mlm", 1);
    const double margin_mlm = mlm_only.curves.back().heldout_margin;

    auto mean = [](const std::vector<double>& v) {
        return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
    };
    auto sample_var = [&](const std::vector<double>& v) {
        const double m = mean(v);
        double s = 0.0;
        for (const double x : v) s += (x - m) * (x - m);
        return s / double(v.size() - 1);
    };
    const double noise = std::sqrt(0.5 * (sample_var(ppl_nt) + sample_var(ppl_tok)));

    if (margin_nt < 0.9) ok = false;
    if (margin_nt < margin_mlm) ok = false;
    if (mean(ppl_nt) > mean(ppl_tok) + noise + 1e-9) ok = false;
    if (train_seconds > 1800.0) ok = false;  // ≤ 30 minutes per headline run

    char what[240];
    std::snprintf(what, sizeof(what),
                  "contrastive separation: margin %.3f (mlm-only %.3f), ppl %.2f vs token-only "
                  "%.2f (noise %.2f), %d triplets",
                  margin_nt, margin_mlm, mean(ppl_nt), mean(ppl_tok), noise,
                  static_cast<int>(ws.stats.emitted));
    report(7, ok, what, seconds_since(t0));
}

void criterion_8_determinism(const Workspace& ws) {
    const auto t0 = Clock::now();
    bool ok = true;
    const fs::path dir = ws.root / "determinism";
    fs::create_directories(dir);

    // a compact corpus keeps the two CLI roundtrips quick
    testsupport::FixtureOptions opt;
    opt.files = 12;
    opt.functions_per_file = 4;
    opt.seed = 4242;
    testsupport::write_fixture_corpus((dir / "src").string(), opt);

    const std::string augment_bin = CCT_AUGMENT_BIN;
    const std::string pretrain_bin = CCT_PRETRAIN_BIN;
    for (const char* tag : {"one", "two"}) {
        const std::string cmd = augment_bin + " --lang c --input " + (dir / "src").string() +
                                " --out " + (dir / (std::string(tag) + ".jsonl")).string() +
                                " --seed 99 --vocab " + (dir / (std::string(tag) + ".model")).string() +
                                " --vocab-size 900";
        if (run_cmd(cmd) != 0) ok = false;
    }
    if (slurp(dir / "one.jsonl") != slurp(dir / "two.jsonl")) ok = false;
    if (slurp(dir / "one.model") != slurp(dir / "two.model")) ok = false;

    for (const char* tag : {"one", "two"}) {
        const std::string cmd = pretrain_bin + " --data " + (dir / "one.jsonl").string() +
                                " --dim 32 --layers 1 --heads 2 --epochs 2 --seed 5 --batch 4 " +
                                "--lr 1e-3 --variant mlm+clr+-+ntmlm --workers 2 --curves " +
                                (dir / (std::string(tag) + ".csv")).string();
        if (run_cmd(cmd) != 0) ok = false;
    }
    const std::string c1 = slurp(dir / "one.csv");
    if (c1.empty() || c1 != slurp(dir / "two.csv")) ok = false;

    report(8, ok, "determinism: augment datasets and pretrain loss curves byte-identical",
           seconds_since(t0));
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    std::printf("building fixture corpus and triplet dataset...\n");
    std::fflush(stdout);
    Workspace ws = build_workspace();
    std::printf("   .. %lld functions → %lld triplets (%.1fs)\n",
                static_cast<long long>(ws.stats.ingested),
                static_cast<long long>(ws.stats.emitted), seconds_since(t0));

    criterion_1_alignment(ws);
    criterion_2_positive_oracle(ws);
    criterion_3_negative_suite(ws);
    criterion_4_mask_statistics(ws);
    criterion_5_closed_forms();
    criterion_6_grad_checks();
    criterion_7_contrastive_separation(ws);
    criterion_8_determinism(ws);

    std::printf("%s: %d criterion failure(s), total %.1fs\n", g_failures == 0 ? "OK" : "FAILED",
                g_failures, seconds_since(t0));
    return g_failures;
}
