#pragma once

#include <vector>

#include "cct/kernel/encoder.hpp"
#include "cct/kernel/params.hpp"
#include "cct/pipeline.hpp"

namespace cct::kernel {

// Per-batch loss components. l_total is always the plain sum of the three.
struct LossReport {
    double l_mlm = 0.0;
    double l_ntmlm = 0.0;
    double l_clr = 0.0;
    double l_total = 0.0;
    std::vector<double> per_position_nll;  // MLM NLLs over M, for perplexity
};

double total_loss(LossReport& report);

// Sum over every position in M = loc_m ∪ loc_r ∪ loc_u of the negative log
// probability of the ORIGINAL code id, read from the MLM head over the
// hidden states of the masked sequence. Head gradients go to `grads`,
// hidden-state gradients accumulate into `d_h`; both scaled by `scale`.
double mlm_loss(const MatrixXd& h, const MaskPlan& plan, const std::vector<int>& original_code,
                const EncoderParams& params, MatrixXd* d_h, EncoderParams* grads,
                double scale = 1.0, std::vector<double>* per_position_nll = nullptr);

// Same cloze objective over the type vocabulary with the NT-MLM head.
double ntmlm_loss(const MatrixXd& h, const MaskPlan& plan,
                  const std::vector<int>& original_types, const EncoderParams& params,
                  MatrixXd* d_h, EncoderParams* grads, double scale = 1.0);

// a·b / (‖a‖‖b‖). Throws DegenerateVector on a zero-norm input.
double cosine_sim(const VectorXd& a, const VectorXd& b);

enum class ClrVariant { HardNegative, PositiveOnly };

// Pooled [CLS] vectors for N triplets. h_neg may be empty for the
// positive-only variant.
struct ContrastBatch {
    MatrixXd h;      // N × d anchors
    MatrixXd h_pos;  // N × d positives
    MatrixXd h_neg;  // N × d hard negatives (unused when positive-only)
    Eigen::Index size() const { return h.rows(); }
};

// In-batch contrastive loss with temperature, mean over the N anchors:
// -log e^{sim(h,h⁺)/τ} / Σ_n (e^{sim(h,h_n⁺)/τ} + e^{sim(h,h_n⁻)/τ}); the
// positive-only variant keeps only the first denominator term family.
// Evaluated with log-sum-exp stabilization. Gradients (same shapes as the
// batch) accumulate into `d_batch` when given.
double clr_loss(const ContrastBatch& batch, double tau, ClrVariant variant,
                ContrastBatch* d_batch = nullptr);

}  // namespace cct::kernel
