#include "cct/kernel/losses.hpp"

#include <cmath>

#include "cct/error.hpp"

namespace cct::kernel {

double total_loss(LossReport& report) {
    report.l_total = report.l_mlm + report.l_ntmlm + report.l_clr;
    return report.l_total;
}

namespace {

// −log softmax(logits)[target] with max-shift stabilization; optionally
// fills the softmax row for the gradient.
double nll_row(const Eigen::RowVectorXd& logits, int target, Eigen::RowVectorXd* softmax_out) {
    const double m = logits.maxCoeff();
    const Eigen::ArrayXd shifted = (logits.array() - m).transpose();
    const double lse = std::log(shifted.exp().sum());
    if (softmax_out) *softmax_out = (shifted - lse).exp().transpose();
    return -(logits(target) - m - lse);
}

double cloze_loss(const MatrixXd& h, const MaskPlan& plan, const std::vector<int>& originals,
                  const MatrixXd& w, const MatrixXd& b, MatrixXd* d_h, MatrixXd* d_w,
                  MatrixXd* d_b, double scale, std::vector<double>* per_position_nll) {
    const std::vector<int> positions = plan.all_positions();
    if (positions.empty()) throw ConfigError("mask plan selects no positions");
    if (static_cast<size_t>(plan.seq_len) != originals.size() ||
        h.rows() != static_cast<Eigen::Index>(originals.size()))
        throw std::out_of_range("mask plan / sequence length mismatch");

    double loss = 0.0;
    for (const int pos : positions) {
        const Eigen::RowVectorXd logits = h.row(pos) * w + b.row(0);
        const int target = originals[static_cast<size_t>(pos)];
        if (target < 0 || target >= logits.size())
            throw std::out_of_range("original id outside head vocabulary");
        Eigen::RowVectorXd softmax;
        const double nll = nll_row(logits, target, (d_h || d_w) ? &softmax : nullptr);
        loss += nll;
        if (per_position_nll) per_position_nll->push_back(nll);
        if (d_h || d_w) {
            Eigen::RowVectorXd d_logits = softmax;
            d_logits(target) -= 1.0;
            d_logits *= scale;
            if (d_w) {
                *d_w += h.row(pos).transpose() * d_logits;
                d_b->row(0) += d_logits;
            }
            if (d_h) d_h->row(pos) += d_logits * w.transpose();
        }
    }
    return loss;
}

}  // namespace

double mlm_loss(const MatrixXd& h, const MaskPlan& plan, const std::vector<int>& original_code,
                const EncoderParams& params, MatrixXd* d_h, EncoderParams* grads, double scale,
                std::vector<double>* per_position_nll) {
    return cloze_loss(h, plan, original_code, params.w_mlm, params.b_mlm, d_h,
                      grads ? &grads->w_mlm : nullptr, grads ? &grads->b_mlm : nullptr, scale,
                      per_position_nll);
}

double ntmlm_loss(const MatrixXd& h, const MaskPlan& plan,
                  const std::vector<int>& original_types, const EncoderParams& params,
                  MatrixXd* d_h, EncoderParams* grads, double scale) {
    return cloze_loss(h, plan, original_types, params.w_nt, params.b_nt, d_h,
                      grads ? &grads->w_nt : nullptr, grads ? &grads->b_nt : nullptr, scale,
                      nullptr);
}

double cosine_sim(const VectorXd& a, const VectorXd& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0) throw DegenerateVector("cosine similarity of zero vector");
    return a.dot(b) / (na * nb);
}

namespace {

// ∂ sim(a,b) / ∂a = b/(‖a‖‖b‖) − sim·a/‖a‖²
void cosine_grad(const VectorXd& a, const VectorXd& b, double sim, double weight, VectorXd& da,
                 VectorXd& db) {
    const double na = a.norm(), nb = b.norm();
    da += weight * (b / (na * nb) - sim * a / (na * na));
    db += weight * (a / (na * nb) - sim * b / (nb * nb));
}

}  // namespace

double clr_loss(const ContrastBatch& batch, double tau, ClrVariant variant,
                ContrastBatch* d_batch) {
    const Eigen::Index n = batch.size();
    if (n < 1) throw ConfigError("contrastive batch is empty");
    if (tau <= 0.0) throw ConfigError("temperature must be positive");
    const bool hard = variant == ClrVariant::HardNegative;
    if (hard && batch.h_neg.rows() != n)
        throw ConfigError("hard-negative variant needs one negative per anchor");

    const Eigen::Index d = batch.h.cols();
    if (d_batch) {
        d_batch->h = MatrixXd::Zero(n, d);
        d_batch->h_pos = MatrixXd::Zero(n, d);
        d_batch->h_neg = MatrixXd::Zero(n, d);
    }

    // similarity tables: anchors × (positives | negatives)
    MatrixXd sim_pos(n, n);
    MatrixXd sim_neg(n, hard ? n : 0);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            sim_pos(i, j) = cosine_sim(batch.h.row(i).transpose(), batch.h_pos.row(j).transpose());
            if (hard)
                sim_neg(i, j) = cosine_sim(batch.h.row(i).transpose(), batch.h_neg.row(j).transpose());
        }
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        // log-sum-exp over 2N (or N) scaled similarities
        double max_term = sim_pos.row(i).maxCoeff() / tau;
        if (hard) max_term = std::max(max_term, sim_neg.row(i).maxCoeff() / tau);
        double sum = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            sum += std::exp(sim_pos(i, j) / tau - max_term);
            if (hard) sum += std::exp(sim_neg(i, j) / tau - max_term);
        }
        const double lse = max_term + std::log(sum);
        loss += -sim_pos(i, i) / tau + lse;

        if (!d_batch) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w_pos = std::exp(sim_pos(i, j) / tau - lse);
            double coeff = (w_pos - (i == j ? 1.0 : 0.0)) / tau * inv_n;
            VectorXd da = VectorXd::Zero(d), dbv = VectorXd::Zero(d);
            cosine_grad(batch.h.row(i).transpose(), batch.h_pos.row(j).transpose(), sim_pos(i, j),
                        coeff, da, dbv);
            d_batch->h.row(i) += da.transpose();
            d_batch->h_pos.row(j) += dbv.transpose();
            if (hard) {
                const double w_neg = std::exp(sim_neg(i, j) / tau - lse);
                coeff = w_neg / tau * inv_n;
                da.setZero();
                dbv.setZero();
                cosine_grad(batch.h.row(i).transpose(), batch.h_neg.row(j).transpose(),
                            sim_neg(i, j), coeff, da, dbv);
                d_batch->h.row(i) += da.transpose();
                d_batch->h_neg.row(j) += dbv.transpose();
            }
        }
    }
    return loss * inv_n;
}

}  // namespace cct::kernel
