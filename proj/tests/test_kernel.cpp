#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cct/error.hpp"
#include "cct/kernel/encoder.hpp"
#include "cct/kernel/gradcheck.hpp"
#include "cct/kernel/losses.hpp"
#include "support/oracles.hpp"

using namespace cct;
using namespace cct::kernel;

namespace {

ModelConfig tiny_config() {
    ModelConfig c;
    c.code_vocab = 7;
    c.type_vocab = 5;
    c.dim = 4;
    c.layers = 1;
    c.heads = 2;
    c.max_len = 16;
    return c;
}

MaskPlan plan_over(const std::vector<int>& positions_m, const std::vector<int>& positions_r,
                   const std::vector<int>& positions_u, int seq_len) {
    MaskPlan plan;
    plan.masked = positions_m;
    plan.replaced = positions_r;
    plan.unchanged = positions_u;
    plan.replacement_ids.assign(positions_r.size(), {1, 1});
    plan.seq_len = seq_len;
    return plan;
}

}  // namespace

TEST_CASE("embedding is the componentwise sum of the two tables") {
    ModelConfig c;
    c.code_vocab = 3;
    c.type_vocab = 3;
    c.dim = 2;
    c.layers = 0;
    EncoderParams p = EncoderParams::zeros(c);
    p.code_emb(1, 0) = 1;
    p.code_emb(1, 1) = 2;
    p.type_emb(2, 0) = 3;
    p.type_emb(2, 1) = 4;

    const MatrixXd v = embed({1}, {2}, p);
    CHECK(v(0, 0) == doctest::Approx(4.0));
    CHECK(v(0, 1) == doctest::Approx(6.0));

    SUBCASE("zero type table leaves pure token embeddings") {
        p.type_emb.setZero();
        const MatrixXd v2 = embed({1}, {2}, p);
        CHECK(v2(0, 0) == doctest::Approx(1.0));
        CHECK(v2(0, 1) == doctest::Approx(2.0));
    }
    SUBCASE("linearity: scaling both tables scales the embedding") {
        EncoderParams q = p;
        q.code_emb *= 2.5;
        q.type_emb *= 2.5;
        const MatrixXd v2 = embed({1}, {2}, q);
        CHECK(v2(0, 0) == doctest::Approx(2.5 * v(0, 0)));
        CHECK(v2(0, 1) == doctest::Approx(2.5 * v(0, 1)));
    }
    SUBCASE("out-of-vocab ids are rejected") {
        CHECK_THROWS_AS(embed({3}, {0}, p), std::out_of_range);
        CHECK_THROWS_AS(embed({0}, {9}, p), std::out_of_range);
    }
}

TEST_CASE("zero-layer encoder with zero position table is the identity") {
    ModelConfig c = tiny_config();
    c.layers = 0;
    Rng rng(3);
    EncoderParams p = EncoderParams::randomized(c, rng, 0.3);
    p.pos_emb.setZero();
    const MatrixXd v = embed({0, 1, 2, 3}, {0, 1, 2, 3}, p);
    const MatrixXd h = encode(v, p);
    CHECK((h - v).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("without position features the pooled output ignores row order") {
    ModelConfig c = tiny_config();
    c.use_positions = false;
    c.layers = 2;
    Rng rng(17);
    const EncoderParams p = EncoderParams::randomized(c, rng, 0.2);
    const MatrixXd v = embed({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}, p);
    MatrixXd permuted = v;
    permuted.row(2).swap(permuted.row(4));
    const MatrixXd h1 = encode(v, p);
    const MatrixXd h2 = encode(permuted, p);
    CHECK((h1.row(0) - h2.row(0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("encoder forward matches the scalar re-implementation") {
    ModelConfig c;
    c.code_vocab = 11;
    c.type_vocab = 7;
    c.dim = 8;
    c.heads = 2;
    c.max_len = 12;
    for (const int layers : {1, 2}) {
        c.layers = layers;
        Rng rng(123 + layers);
        const EncoderParams p = EncoderParams::randomized(c, rng, 0.4);
        const std::vector<int> code = {2, 5, 9, 1, 6};
        const std::vector<int> type = {1, 3, 2, 6, 0};
        const MatrixXd h = encode_sequence(code, type, p);
        const auto oracle = testsupport::scalar_forward(code, type, p);
        double max_diff = 0.0;
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            for (Eigen::Index j = 0; j < h.cols(); ++j)
                max_diff = std::max(max_diff,
                                    std::abs(h(i, j) - oracle[static_cast<size_t>(i)]
                                /* column */            [static_cast<size_t>(j)]));
        CHECK(max_diff < 1e-10);
    }
}

TEST_CASE("encoding is deterministic (same params, same input, same bits)") {
    ModelConfig c = tiny_config();
    Rng rng(5);
    const EncoderParams p = EncoderParams::randomized(c, rng, 0.2);
    const MatrixXd h1 = encode_sequence({1, 2, 3}, {1, 2, 3}, p);
    const MatrixXd h2 = encode_sequence({1, 2, 3}, {1, 2, 3}, p);
    CHECK((h1 - h2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniform-logit cloze losses hit ln |V| per position") {
    ModelConfig c = tiny_config();
    c.code_vocab = 2000;
    c.type_vocab = 300;
    EncoderParams p = EncoderParams::zeros(c);
    Rng rng(7);
    MatrixXd h = MatrixXd::Random(6, c.dim);  // any hidden states: the head is zero

    SUBCASE("MLM, one masked position") {
        const MaskPlan plan = plan_over({2}, {}, {}, 6);
        const double loss = mlm_loss(h, plan, {0, 1, 2, 3, 4, 5}, p, nullptr, nullptr);
        CHECK(std::abs(loss - std::log(2000.0)) < 1e-9);
    }
    SUBCASE("NT-MLM, two selected positions") {
        const MaskPlan plan = plan_over({1}, {}, {3}, 6);
        const double loss = ntmlm_loss(h, plan, {0, 1, 2, 3, 4, 0}, p, nullptr, nullptr);
        CHECK(std::abs(loss - 2.0 * std::log(300.0)) < 1e-9);
    }
    SUBCASE("unchanged positions still contribute to the sum") {
        const MaskPlan only_u = plan_over({}, {}, {4}, 6);
        const double loss = mlm_loss(h, only_u, {0, 1, 2, 3, 4, 5}, p, nullptr, nullptr);
        CHECK(loss == doctest::Approx(std::log(2000.0)));
    }
    SUBCASE("a confident correct head drives the loss to zero") {
        p.b_mlm(0, 4) = 60.0;
        const MaskPlan plan = plan_over({2}, {}, {}, 6);
        const double loss = mlm_loss(h, plan, {4, 4, 4, 4, 4, 4}, p, nullptr, nullptr);
        CHECK(loss < 1e-9);
    }
}

TEST_CASE("cosine similarity basics") {
    VectorXd a(2), b(2);
    a << 1, 0;
    b << 1, 0;
    CHECK(cosine_sim(a, b) == doctest::Approx(1.0));
    b << 0, 1;
    CHECK(cosine_sim(a, b) == doctest::Approx(0.0));
    a << 1, 2;
    b << 2, 4;
    CHECK(cosine_sim(a, b) == doctest::Approx(1.0));
    b.setZero();
    CHECK_THROWS_AS(cosine_sim(a, b), DegenerateVector);
}

TEST_CASE("contrastive loss closed forms") {
    ContrastBatch batch;
    batch.h.resize(1, 2);
    batch.h_pos.resize(1, 2);
    batch.h_neg.resize(1, 2);

    SUBCASE("positive-only with one pair is exactly zero") {
        batch.h << 0.3, -0.7;
        batch.h_pos << 1.9, 0.2;
        const double loss = clr_loss(batch, 0.05, ClrVariant::PositiveOnly);
        CHECK(std::abs(loss) < 1e-9);
    }
    SUBCASE("equal similarities give ln 2") {
        batch.h << 1, 0;
        batch.h_pos << 0, 1;
        batch.h_neg << 0, 1;
        const double loss = clr_loss(batch, 0.05, ClrVariant::HardNegative);
        CHECK(std::abs(loss - std::log(2.0)) < 1e-9);
    }
    SUBCASE("perfect separation at tau 0.05 gives ln(1+e^-20)") {
        batch.h << 1, 0;
        batch.h_pos << 1, 0;
        batch.h_neg << 0, 1;
        const double loss = clr_loss(batch, 0.05, ClrVariant::HardNegative);
        CHECK(std::abs(loss - std::log1p(std::exp(-20.0))) < 1e-9);
    }
    SUBCASE("scale invariance of every member") {
        Rng rng(31);
        ContrastBatch big;
        big.h.resize(3, 5);
        big.h_pos.resize(3, 5);
        big.h_neg.resize(3, 5);
        for (auto* m : {&big.h, &big.h_pos, &big.h_neg})
            for (Eigen::Index i = 0; i < m->rows(); ++i)
                for (Eigen::Index j = 0; j < m->cols(); ++j) (*m)(i, j) = rng.gauss();
        const double base = clr_loss(big, 0.05, ClrVariant::HardNegative);
        big.h.row(1) *= 3.7;
        big.h_pos.row(0) *= 0.02;
        big.h_neg.row(2) *= 140.0;
        const double scaled = clr_loss(big, 0.05, ClrVariant::HardNegative);
        CHECK(std::abs(base - scaled) < 1e-12);
    }
    SUBCASE("temperature must be positive and batches non-empty") {
        batch.h << 1, 0;
        batch.h_pos << 1, 0;
        batch.h_neg << 0, 1;
        CHECK_THROWS_AS(clr_loss(batch, 0.0, ClrVariant::HardNegative), ConfigError);
        ContrastBatch empty;
        empty.h.resize(0, 2);
        CHECK_THROWS_AS(clr_loss(empty, 0.05, ClrVariant::HardNegative), ConfigError);
    }
}

TEST_CASE("total loss is the plain sum of the three components") {
    LossReport r;
    r.l_mlm = 1.0;
    r.l_ntmlm = 2.0;
    r.l_clr = 3.0;
    CHECK(total_loss(r) == doctest::Approx(6.0));
    LossReport zero;
    CHECK(total_loss(zero) == doctest::Approx(0.0));
    // recompute equality
    LossReport again = r;
    CHECK(total_loss(again) == r.l_total);
}

TEST_CASE("finite differences: quadratic function is exact to roundoff") {
    ModelConfig c = tiny_config();
    Rng rng(11);
    EncoderParams params = EncoderParams::randomized(c, rng, 0.5);

    auto loss_fn = [&params](EncoderParams* grads) {
        double loss = 0.0;
        auto ts = params.tensors();
        auto gs = grads ? grads->tensors() : decltype(ts){};
        for (size_t t = 0; t < ts.size(); ++t) {
            const MatrixXd& m = *ts[t].second;
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j) {
                    const double coeff =
                        0.25 + static_cast<double>((t * 131 + static_cast<size_t>(i) * 17 +
                                                    static_cast<size_t>(j) * 7) %
                                                   13);
                    const double x = m(i, j);
                    loss += (coeff * x * x + x) / 512.0;
                    if (grads) (*gs[t].second)(i, j) += (2.0 * coeff * x + 1.0) / 512.0;
                }
        }
        return loss;
    };

    Rng check_rng(99);
    // central differences are exact for quadratics, so a coarse step only
    // reduces roundoff in the summed loss
    const GradCheckReport report = grad_check(loss_fn, params, 200, 1e-3, check_rng);
    CHECK(report.coordinates == 200);
    CHECK(report.max_rel_error < 1e-8);
}

TEST_CASE("finite differences: cloze losses through the encoder") {
    ModelConfig c = tiny_config();
    Rng rng(21);
    EncoderParams params = EncoderParams::randomized(c, rng, 0.3);
    const std::vector<int> code = {2, 5, 1, 6, 3, 0};
    const std::vector<int> type = {1, 3, 2, 4, 0, 1};
    const MaskPlan plan = plan_over({1, 4}, {2}, {3}, 6);

    auto loss_fn = [&](EncoderParams* grads) {
        ForwardCache cache;
        const MatrixXd h = encode_sequence(code, type, params, grads ? &cache : nullptr);
        if (!grads) {
            return mlm_loss(h, plan, code, params, nullptr, nullptr) +
                   ntmlm_loss(h, plan, type, params, nullptr, nullptr);
        }
        MatrixXd d_h = MatrixXd::Zero(h.rows(), h.cols());
        double loss = mlm_loss(h, plan, code, params, &d_h, grads);
        loss += ntmlm_loss(h, plan, type, params, &d_h, grads);
        encode_backward(cache, params, d_h, *grads);
        return loss;
    };

    Rng check_rng(3);
    const GradCheckReport report = grad_check(loss_fn, params, 150, 1e-6, check_rng);
    CHECK(report.coordinates == 150);
    CHECK(report.max_rel_error < 1e-5);
}

TEST_CASE("finite differences: contrastive loss over pooled vectors") {
    Rng rng(55);
    ContrastBatch batch;
    const int n = 4, d = 6;
    batch.h.resize(n, d);
    batch.h_pos.resize(n, d);
    batch.h_neg.resize(n, d);
    for (auto* m : {&batch.h, &batch.h_pos, &batch.h_neg})
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < d; ++j) (*m)(i, j) = rng.gauss();

    for (const ClrVariant variant : {ClrVariant::HardNegative, ClrVariant::PositiveOnly}) {
        ContrastBatch grads;
        clr_loss(batch, 0.05, variant, &grads);
        double max_rel = 0.0;
        const double h = 1e-6;
        std::vector<std::pair<MatrixXd*, MatrixXd*>> pairs = {
            {&batch.h, &grads.h}, {&batch.h_pos, &grads.h_pos}, {&batch.h_neg, &grads.h_neg}};
        for (auto [values, analytic] : pairs) {
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = 0; j < d; ++j) {
                    const double saved = (*values)(i, j);
                    (*values)(i, j) = saved + h;
                    const double up = clr_loss(batch, 0.05, variant);
                    (*values)(i, j) = saved - h;
                    const double down = clr_loss(batch, 0.05, variant);
                    (*values)(i, j) = saved;
                    const double fd = (up - down) / (2 * h);
                    const double an = (*analytic)(i, j);
                    max_rel = std::max(max_rel,
                                       std::abs(fd - an) /
                                           std::max({std::abs(fd), std::abs(an), 1e-3}));
                }
        }
        CHECK(max_rel < 1e-5);
    }
}

TEST_CASE("finite differences: contrastive loss through the full encoder chain") {
    ModelConfig c = tiny_config();
    Rng rng(77);
    EncoderParams params = EncoderParams::randomized(c, rng, 0.3);
    const std::vector<std::vector<int>> codes = {{1, 2, 3, 4}, {2, 0, 5, 1}};
    const std::vector<std::vector<int>> poss = {{1, 2, 4, 3}, {2, 0, 1, 5}};
    const std::vector<std::vector<int>> negs = {{1, 6, 3, 4}, {2, 0, 5, 6}};
    const std::vector<int> types = {0, 1, 2, 3};

    auto loss_fn = [&](EncoderParams* grads) {
        std::vector<ForwardCache> caches(6);
        ContrastBatch batch;
        batch.h.resize(2, c.dim);
        batch.h_pos.resize(2, c.dim);
        batch.h_neg.resize(2, c.dim);
        for (int i = 0; i < 2; ++i) {
            batch.h.row(i) = encode_sequence(codes[i], types, params,
                                             grads ? &caches[i * 3] : nullptr)
                                 .row(0);
            batch.h_pos.row(i) = encode_sequence(poss[i], types, params,
                                                 grads ? &caches[i * 3 + 1] : nullptr)
                                     .row(0);
            batch.h_neg.row(i) = encode_sequence(negs[i], types, params,
                                                 grads ? &caches[i * 3 + 2] : nullptr)
                                     .row(0);
        }
        if (!grads) return clr_loss(batch, 0.05, ClrVariant::HardNegative);
        ContrastBatch d_batch;
        const double loss = clr_loss(batch, 0.05, ClrVariant::HardNegative, &d_batch);
        for (int i = 0; i < 2; ++i) {
            MatrixXd d_h = MatrixXd::Zero(4, c.dim);
            d_h.row(0) = d_batch.h.row(i);
            encode_backward(caches[i * 3], params, d_h, *grads);
            d_h.setZero();
            d_h.row(0) = d_batch.h_pos.row(i);
            encode_backward(caches[i * 3 + 1], params, d_h, *grads);
            d_h.setZero();
            d_h.row(0) = d_batch.h_neg.row(i);
            encode_backward(caches[i * 3 + 2], params, d_h, *grads);
        }
        return loss;
    };

    Rng check_rng(5);
    const GradCheckReport report = grad_check(loss_fn, params, 120, 1e-6, check_rng);
    CHECK(report.max_rel_error < 1e-5);
}
