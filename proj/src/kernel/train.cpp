#include "cct/kernel/train.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "cct/error.hpp"

namespace cct::kernel {

VariantSpec parse_variant(const std::string& name) {
    std::string n = name;
    // "±" (UTF-8) and "+-" both spell the hard-negative variant
    size_t pos;
    while ((pos = n.find("±")) != std::string::npos) n.replace(pos, 2, "+-");
    if (n == "mlm") return VariantSpec{true, false, false, false};
    if (n == "mlm+clr+") return VariantSpec{true, true, false, false};
    if (n == "mlm+clr+-") return VariantSpec{true, true, true, false};
    if (n == "mlm+clr+-+ntmlm") return VariantSpec{true, true, true, true};
    throw ConfigError("unknown variant: " + name);
}

std::pair<std::vector<size_t>, std::vector<size_t>> split_dataset(size_t count,
                                                                  double heldout_frac,
                                                                  uint64_t seed) {
    std::vector<size_t> idx(count);
    for (size_t i = 0; i < count; ++i) idx[i] = i;
    Rng rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
    rng.shuffle(idx);
    size_t heldout_n = static_cast<size_t>(heldout_frac * static_cast<double>(count));
    if (heldout_frac > 0.0 && count >= 2 && heldout_n == 0) heldout_n = 1;
    std::vector<size_t> heldout(idx.begin(), idx.begin() + static_cast<long>(heldout_n));
    std::vector<size_t> train(idx.begin() + static_cast<long>(heldout_n), idx.end());
    std::sort(train.begin(), train.end());
    std::sort(heldout.begin(), heldout.end());
    return {std::move(train), std::move(heldout)};
}

namespace {

template <typename F>
void parallel_members(int count, int workers, F&& fn) {
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i, 0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        threads.emplace_back([&fn, w, count, workers] {
            for (int i = w; i < count; i += workers) fn(i, w);
        });
    for (auto& t : threads) t.join();
}

std::pair<std::vector<int>, std::vector<int>> masked_ids(const DatasetRecord& rec) {
    CodeSequence code;
    code.ids = rec.triplet.x.code_ids;
    TypeSequence type;
    type.ids = rec.triplet.x.type_ids;
    return apply_masks(code, type, rec.mask);
}

struct AdamState {
    EncoderParams m, v;
    long t = 0;
};

void optimizer_step(EncoderParams& params, const EncoderParams& grads, AdamState& state,
                    const TrainConfig& cfg) {
    if (cfg.optimizer == "sgd") {
        params.add_scaled(grads, -cfg.lr);
        return;
    }
    ++state.t;
    const double bc1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(state.t));
    auto ps = params.tensors();
    const auto gs = grads.tensors();
    auto ms = state.m.tensors();
    auto vs = state.v.tensors();
    for (size_t i = 0; i < ps.size(); ++i) {
        MatrixXd& p = *ps[i].second;
        const MatrixXd& g = *gs[i].second;
        MatrixXd& m = *ms[i].second;
        MatrixXd& v = *vs[i].second;
        m = cfg.adam_beta1 * m + (1.0 - cfg.adam_beta1) * g;
        v = cfg.adam_beta2 * v.array().matrix() + (1.0 - cfg.adam_beta2) * g.array().square().matrix();
        p.array() -=
            cfg.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + cfg.adam_eps);
    }
}

bool sequences_fit(const DatasetRecord& r, int max_len) {
    const size_t cap = static_cast<size_t>(max_len);
    return r.triplet.x.code_ids.size() <= cap && r.triplet.x_pos.code_ids.size() <= cap &&
           r.triplet.x_neg.code_ids.size() <= cap;
}

}  // namespace

double perplexity(const EncoderParams& params, const std::vector<DatasetRecord>& heldout) {
    if (heldout.empty()) throw ConfigError("perplexity needs a non-empty held-out set");
    double total_nll = 0.0;
    size_t positions = 0;
    for (const DatasetRecord& rec : heldout) {
        const auto [mcode, mtype] = masked_ids(rec);
        const MatrixXd h = encode_sequence(mcode, mtype, params, nullptr);
        std::vector<double> nll;
        mlm_loss(h, rec.mask, rec.triplet.x.code_ids, params, nullptr, nullptr, 1.0, &nll);
        for (const double x : nll) total_nll += x;
        positions += nll.size();
    }
    return std::exp(total_nll / static_cast<double>(positions));
}

double triplet_margin_accuracy(const EncoderParams& params,
                               const std::vector<DatasetRecord>& triplets) {
    if (triplets.empty()) throw ConfigError("triplet evaluation needs at least one triplet");
    size_t hits = 0;
    for (const DatasetRecord& rec : triplets) {
        try {
            const MatrixXd hx =
                encode_sequence(rec.triplet.x.code_ids, rec.triplet.x.type_ids, params);
            const MatrixXd hp =
                encode_sequence(rec.triplet.x_pos.code_ids, rec.triplet.x_pos.type_ids, params);
            const MatrixXd hn =
                encode_sequence(rec.triplet.x_neg.code_ids, rec.triplet.x_neg.type_ids, params);
            const double sim_pos = cosine_sim(hx.row(0).transpose(), hp.row(0).transpose());
            const double sim_neg = cosine_sim(hx.row(0).transpose(), hn.row(0).transpose());
            if (sim_pos > sim_neg) ++hits;  // strict: ties are failures
        } catch (const DegenerateVector&) {
            continue;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(triplets.size());
}

TrainResult train_loop(const std::vector<DatasetRecord>& dataset, const TrainConfig& config) {
    if (dataset.empty()) throw ConfigError("training dataset is empty");
    const VariantSpec variant = parse_variant(config.variant);

    ModelConfig mc = config.model;
    mc.use_types = variant.ntmlm;
    if (mc.code_vocab == 0 || mc.type_vocab == 0) {
        int max_code = 0, max_type = 0;
        for (const DatasetRecord& r : dataset) {
            for (const auto* m : {&r.triplet.x, &r.triplet.x_pos, &r.triplet.x_neg}) {
                for (const int id : m->code_ids) max_code = std::max(max_code, id);
                for (const int id : m->type_ids) max_type = std::max(max_type, id);
            }
            for (const auto& pair : r.mask.replacement_ids) {
                max_code = std::max(max_code, pair[0]);
                max_type = std::max(max_type, pair[1]);
            }
        }
        if (mc.code_vocab == 0) mc.code_vocab = max_code + 1;
        if (mc.type_vocab == 0) mc.type_vocab = max_type + 1;
    }

    std::vector<const DatasetRecord*> usable;
    int skipped_long = 0;
    for (const DatasetRecord& r : dataset) {
        if (sequences_fit(r, mc.max_len)) usable.push_back(&r);
        else ++skipped_long;
    }
    if (usable.empty()) throw ConfigError("no record fits the position table");

    auto [train_idx, heldout_idx] = split_dataset(usable.size(), config.heldout_frac, config.seed);
    if (train_idx.empty()) throw ConfigError("held-out fraction leaves no training data");
    std::vector<DatasetRecord> heldout;
    for (const size_t i : heldout_idx) heldout.push_back(*usable[i]);

    Rng rng(config.seed);
    Rng init_rng = rng.child(1);
    EncoderParams params = EncoderParams::randomized(mc, init_rng, config.init_std);

    AdamState adam{EncoderParams::zeros(mc), EncoderParams::zeros(mc), 0};
    EncoderParams grads = EncoderParams::zeros(mc);
    const int workers = std::max(1, config.workers);
    // one gradient buffer per batch member, merged in member order, so the
    // result is bit-identical for every worker count
    std::vector<EncoderParams> member_grads;
    for (int w = 0; w < config.batch_size; ++w) member_grads.push_back(EncoderParams::zeros(mc));

    struct Work {
        ForwardCache cache_x, cache_pos, cache_neg;
        double l_mlm = 0.0, l_nt = 0.0;
    };

    TrainResult result;
    result.train_count = static_cast<int>(train_idx.size());
    result.heldout_count = static_cast<int>(heldout.size());
    result.skipped_long = skipped_long;

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        Rng epoch_rng = rng.child(1000 + static_cast<uint64_t>(epoch));
        std::vector<size_t> order = train_idx;
        epoch_rng.shuffle(order);

        double sum_mlm = 0.0, sum_nt = 0.0, sum_clr = 0.0;
        int batches = 0;

        for (size_t start = 0; start < order.size(); start += static_cast<size_t>(config.batch_size)) {
            const size_t end = std::min(order.size(), start + static_cast<size_t>(config.batch_size));
            const int b = static_cast<int>(end - start);
            std::vector<const DatasetRecord*> batch(static_cast<size_t>(b));
            for (int i = 0; i < b; ++i) batch[static_cast<size_t>(i)] = usable[order[start + static_cast<size_t>(i)]];

            std::vector<Work> works(static_cast<size_t>(b));
            const double scale = 1.0 / static_cast<double>(b);

            parallel_members(b, workers, [&](int i, int w) {
                (void)w;
                const DatasetRecord& rec = *batch[static_cast<size_t>(i)];
                Work& work = works[static_cast<size_t>(i)];
                EncoderParams& wg = member_grads[static_cast<size_t>(i)];
                // cloze objectives on the masked original
                ForwardCache cache_masked;
                const auto [mcode, mtype] = masked_ids(rec);
                const MatrixXd h = encode_sequence(mcode, mtype, params, &cache_masked);
                MatrixXd d_h = MatrixXd::Zero(h.rows(), h.cols());
                work.l_mlm =
                    mlm_loss(h, rec.mask, rec.triplet.x.code_ids, params, &d_h, &wg, scale);
                if (variant.ntmlm)
                    work.l_nt =
                        ntmlm_loss(h, rec.mask, rec.triplet.x.type_ids, params, &d_h, &wg, scale);
                encode_backward(cache_masked, params, d_h, wg);
                // contrastive branches on the unmasked triplet
                if (variant.clr) {
                    encode_sequence(rec.triplet.x.code_ids, rec.triplet.x.type_ids, params,
                                    &work.cache_x);
                    encode_sequence(rec.triplet.x_pos.code_ids, rec.triplet.x_pos.type_ids, params,
                                    &work.cache_pos);
                    if (variant.hard_negative)
                        encode_sequence(rec.triplet.x_neg.code_ids, rec.triplet.x_neg.type_ids,
                                        params, &work.cache_neg);
                }
            });

            double l_clr = 0.0;
            MatrixXd d_x_rows, d_pos_rows, d_neg_rows;
            if (variant.clr) {
                const int d = mc.dim;
                ContrastBatch cb;
                cb.h.resize(b, d);
                cb.h_pos.resize(b, d);
                cb.h_neg.resize(variant.hard_negative ? b : 0, d);
                for (int i = 0; i < b; ++i) {
                    cb.h.row(i) = works[static_cast<size_t>(i)].cache_x.h.row(0);
                    cb.h_pos.row(i) = works[static_cast<size_t>(i)].cache_pos.h.row(0);
                    if (variant.hard_negative)
                        cb.h_neg.row(i) = works[static_cast<size_t>(i)].cache_neg.h.row(0);
                }
                const ClrVariant cv = variant.hard_negative ? ClrVariant::HardNegative
                                                            : ClrVariant::PositiveOnly;
                ContrastBatch db;
                l_clr = clr_loss(cb, config.tau, cv, &db);
                d_x_rows = db.h;
                d_pos_rows = db.h_pos;
                d_neg_rows = db.h_neg;
                if (config.bidirectional_clr) {
                    ContrastBatch reversed;
                    reversed.h = cb.h_pos;
                    reversed.h_pos = cb.h;
                    reversed.h_neg = cb.h_neg;
                    ContrastBatch db2;
                    const double l2 = clr_loss(reversed, config.tau, cv, &db2);
                    l_clr = 0.5 * (l_clr + l2);
                    d_x_rows = 0.5 * (d_x_rows + db2.h_pos);
                    d_pos_rows = 0.5 * (d_pos_rows + db2.h);
                    if (variant.hard_negative) d_neg_rows = 0.5 * (d_neg_rows + db2.h_neg);
                }

                parallel_members(b, workers, [&](int i, int w) {
                    (void)w;
                    Work& work = works[static_cast<size_t>(i)];
                    EncoderParams& wg = member_grads[static_cast<size_t>(i)];
                    MatrixXd d_h = MatrixXd::Zero(work.cache_x.h.rows(), d);
                    d_h.row(0) = d_x_rows.row(i);
                    encode_backward(work.cache_x, params, d_h, wg);
                    d_h = MatrixXd::Zero(work.cache_pos.h.rows(), d);
                    d_h.row(0) = d_pos_rows.row(i);
                    encode_backward(work.cache_pos, params, d_h, wg);
                    if (variant.hard_negative) {
                        d_h = MatrixXd::Zero(work.cache_neg.h.rows(), d);
                        d_h.row(0) = d_neg_rows.row(i);
                        encode_backward(work.cache_neg, params, d_h, wg);
                    }
                });
            }

            grads.set_zero();
            for (int i = 0; i < b; ++i) {
                grads.add_scaled(member_grads[static_cast<size_t>(i)], 1.0);
                member_grads[static_cast<size_t>(i)].set_zero();
            }

            LossReport report;
            for (const Work& work : works) {
                report.l_mlm += work.l_mlm * scale;
                report.l_ntmlm += work.l_nt * scale;
            }
            report.l_clr = l_clr;
            total_loss(report);
            if (!std::isfinite(report.l_total))
                throw DivergenceError("non-finite loss at epoch " + std::to_string(epoch));

            optimizer_step(params, grads, adam, config);
            if (!params.all_finite())
                throw DivergenceError("parameters became non-finite at epoch " +
                                      std::to_string(epoch));
            sum_mlm += report.l_mlm;
            sum_nt += report.l_ntmlm;
            sum_clr += report.l_clr;
            ++batches;
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.l_mlm = sum_mlm / std::max(1, batches);
        stats.l_ntmlm = sum_nt / std::max(1, batches);
        stats.l_clr = sum_clr / std::max(1, batches);
        stats.l_total = stats.l_mlm + stats.l_ntmlm + stats.l_clr;
        stats.heldout_ppl = heldout.empty() ? 0.0 : perplexity(params, heldout);
        stats.heldout_margin = heldout.empty() ? 0.0 : triplet_margin_accuracy(params, heldout);
        if (config.epoch_callback) config.epoch_callback(stats);
        result.curves.push_back(stats);
    }

    if (!params.all_finite()) throw DivergenceError("parameters diverged");
    result.params = std::move(params);
    return result;
}

std::string curves_to_csv(const std::vector<EpochStats>& curves) {
    std::string out = "epoch,l_mlm,l_ntmlm,l_clr,l_total,heldout_ppl,heldout_margin\n";
    char buf[256];
    for (const EpochStats& s : curves) {
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.epoch,
                      s.l_mlm, s.l_ntmlm, s.l_clr, s.l_total, s.heldout_ppl, s.heldout_margin);
        out += buf;
    }
    return out;
}

}  // namespace cct::kernel
