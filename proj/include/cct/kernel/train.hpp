#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cct/kernel/losses.hpp"
#include "cct/kernel/params.hpp"
#include "cct/pipeline.hpp"

namespace cct::kernel {

// Which of the three objectives a run optimizes; mirrors the four model
// variations selectable on the CLI.
struct VariantSpec {
    bool mlm = true;
    bool clr = false;
    bool hard_negative = false;
    bool ntmlm = false;
};

// Accepts "mlm", "mlm+clr+", "mlm+clr±" and "mlm+clr±+ntmlm"
// ("+-" is an ASCII alias for "±").
VariantSpec parse_variant(const std::string& name);

struct EpochStats {
    int epoch = 0;
    double l_mlm = 0.0;
    double l_ntmlm = 0.0;
    double l_clr = 0.0;
    double l_total = 0.0;
    double heldout_ppl = 0.0;
    double heldout_margin = 0.0;
};

struct TrainConfig {
    ModelConfig model;         // code/type vocab inferred from data when 0
    std::string variant = "mlm+clr±+ntmlm";
    double tau = 0.05;
    double lr = 1e-4;
    int epochs = 1;
    int batch_size = 8;
    int workers = 1;
    uint64_t seed = 0;
    double heldout_frac = 0.1;
    std::string optimizer = "adam";  // "adam" | "sgd"
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    double init_std = 0.02;
    bool bidirectional_clr = false;
    // observer for long runs; called after every epoch's evaluation
    std::function<void(const EpochStats&)> epoch_callback;
};

struct TrainResult {
    EncoderParams params;
    std::vector<EpochStats> curves;
    int train_count = 0;
    int heldout_count = 0;
    int skipped_long = 0;
};

// Deterministic gradient descent over the summed objectives. Workers only
// parallelize the per-record math; every random decision happens on the
// driving thread, and per-member gradient buffers merge in member order, so
// curves are bit-identical for any worker count. Throws DivergenceError when
// a batch loss stops being finite.
TrainResult train_loop(const std::vector<DatasetRecord>& dataset, const TrainConfig& config);

// exp(mean per-position MLM NLL over M) on the held-out records.
double perplexity(const EncoderParams& params, const std::vector<DatasetRecord>& heldout);

// Fraction of triplets with sim(h,h⁺) strictly greater than sim(h,h⁻);
// ties and degenerate embeddings count as failures.
double triplet_margin_accuracy(const EncoderParams& params,
                               const std::vector<DatasetRecord>& triplets);

std::string curves_to_csv(const std::vector<EpochStats>& curves);

// Deterministic train/heldout split of record indices.
std::pair<std::vector<size_t>, std::vector<size_t>> split_dataset(size_t count,
                                                                  double heldout_frac,
                                                                  uint64_t seed);

}  // namespace cct::kernel
