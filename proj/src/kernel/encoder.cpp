#include "cct/kernel/encoder.hpp"

#include <cmath>
#include <stdexcept>

namespace cct::kernel {

namespace {

constexpr double kGeluC = 0.7978845608028654;  // sqrt(2/pi)
constexpr double kGeluA = 0.044715;

void check_ids(const std::vector<int>& ids, int vocab, const char* what) {
    for (const int id : ids)
        if (id < 0 || id >= vocab)
            throw std::out_of_range(std::string(what) + " id out of vocabulary range: " +
                                    std::to_string(id));
}

MatrixXd softmax_rows(const MatrixXd& s) {
    MatrixXd p(s.rows(), s.cols());
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        const double m = s.row(i).maxCoeff();
        const Eigen::ArrayXd e = (s.row(i).array() - m).exp();
        p.row(i) = (e / e.sum()).matrix();
    }
    return p;
}

// y = gain ⊙ (x−μ)/σ + bias, population variance per row
void layer_norm(const MatrixXd& in, const MatrixXd& gain, const MatrixXd& bias, double eps,
                MatrixXd& xhat, VectorXd& inv_std, MatrixXd& out) {
    const Eigen::Index n = in.rows(), d = in.cols();
    xhat.resize(n, d);
    out.resize(n, d);
    inv_std.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mean = in.row(i).mean();
        const double var = (in.row(i).array() - mean).square().mean();
        const double inv = 1.0 / std::sqrt(var + eps);
        inv_std(i) = inv;
        xhat.row(i) = (in.row(i).array() - mean).matrix() * inv;
        out.row(i) = (xhat.row(i).array() * gain.row(0).array() + bias.row(0).array()).matrix();
    }
}

// dx for y = g·x̂ + b given dy; also accumulates dg, db
MatrixXd layer_norm_backward(const MatrixXd& d_out, const MatrixXd& xhat,
                             const VectorXd& inv_std, const MatrixXd& gain, MatrixXd& d_gain,
                             MatrixXd& d_bias) {
    const Eigen::Index n = d_out.rows(), d = d_out.cols();
    MatrixXd dx(n, d);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Array<double, 1, Eigen::Dynamic> dyg =
            d_out.row(i).array() * gain.row(0).array();
        const double mean_dyg = dyg.mean();
        const double mean_dyg_xhat = (dyg * xhat.row(i).array()).mean();
        dx.row(i) =
            ((dyg - mean_dyg - xhat.row(i).array() * mean_dyg_xhat) * inv_std(i)).matrix();
    }
    d_gain.row(0) += (d_out.array() * xhat.array()).colwise().sum().matrix();
    d_bias.row(0) += d_out.colwise().sum();
    return dx;
}

}  // namespace

double gelu(double x) {
    const double u = kGeluC * (x + kGeluA * x * x * x);
    return 0.5 * x * (1.0 + std::tanh(u));
}

double gelu_derivative(double x) {
    const double u = kGeluC * (x + kGeluA * x * x * x);
    const double t = std::tanh(u);
    return 0.5 * (1.0 + t) + 0.5 * x * (1.0 - t * t) * kGeluC * (1.0 + 3.0 * kGeluA * x * x);
}

MatrixXd embed(const std::vector<int>& code_ids, const std::vector<int>& type_ids,
               const EncoderParams& params) {
    check_ids(code_ids, params.config.code_vocab, "code");
    if (params.config.use_types) {
        if (type_ids.size() != code_ids.size())
            throw std::out_of_range("type sequence length differs from code sequence");
        check_ids(type_ids, params.config.type_vocab, "type");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(code_ids.size());
    MatrixXd v(n, params.config.dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        v.row(i) = params.code_emb.row(code_ids[static_cast<size_t>(i)]);
        if (params.config.use_types)
            v.row(i) += params.type_emb.row(type_ids[static_cast<size_t>(i)]);
    }
    return v;
}

MatrixXd encode(const MatrixXd& v, const EncoderParams& params, ForwardCache* cache) {
    const ModelConfig& cfg = params.config;
    const Eigen::Index n = v.rows();
    const int dh = cfg.head_dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    MatrixXd x = v;
    if (cfg.use_positions) {
        if (n > params.pos_emb.rows())
            throw std::out_of_range("sequence longer than position table");
        x += params.pos_emb.topRows(n);
    }
    if (cache) {
        cache->x0 = x;
        cache->layers.clear();
        cache->layers.resize(static_cast<size_t>(cfg.layers));
    }

    for (int li = 0; li < cfg.layers; ++li) {
        const LayerParams& l = params.layers[static_cast<size_t>(li)];
        LayerCache* lc = cache ? &cache->layers[static_cast<size_t>(li)] : nullptr;
        if (lc) lc->x_in = x;

        MatrixXd q = x * l.wq + MatrixXd::Ones(n, 1) * l.bq;
        MatrixXd k = x * l.wk + MatrixXd::Ones(n, 1) * l.bk;
        MatrixXd vv = x * l.wv + MatrixXd::Ones(n, 1) * l.bv;
        MatrixXd z(n, cfg.dim);
        std::vector<MatrixXd> attn(static_cast<size_t>(cfg.heads));
        for (int h = 0; h < cfg.heads; ++h) {
            const auto qh = q.middleCols(h * dh, dh);
            const auto kh = k.middleCols(h * dh, dh);
            const auto vh = vv.middleCols(h * dh, dh);
            const MatrixXd p = softmax_rows(qh * kh.transpose() * scale);
            z.middleCols(h * dh, dh) = p * vh;
            attn[static_cast<size_t>(h)] = p;
        }
        MatrixXd attn_out = z * l.wo + MatrixXd::Ones(n, 1) * l.bo;
        MatrixXd ln1_in = x + attn_out;

        MatrixXd ln1_xhat, ln1_out;
        VectorXd ln1_inv;
        layer_norm(ln1_in, l.ln1_g, l.ln1_b, cfg.ln_eps, ln1_xhat, ln1_inv, ln1_out);

        MatrixXd ffn_pre = ln1_out * l.w1 + MatrixXd::Ones(n, 1) * l.b1;
        MatrixXd ffn_act = ffn_pre.unaryExpr([](double t) { return gelu(t); });
        MatrixXd ln2_in = ln1_out + ffn_act * l.w2 + MatrixXd::Ones(n, 1) * l.b2;

        MatrixXd ln2_xhat, ln2_out;
        VectorXd ln2_inv;
        layer_norm(ln2_in, l.ln2_g, l.ln2_b, cfg.ln_eps, ln2_xhat, ln2_inv, ln2_out);

        if (lc) {
            lc->q = std::move(q);
            lc->k = std::move(k);
            lc->v = std::move(vv);
            lc->attn = std::move(attn);
            lc->z = std::move(z);
            lc->attn_out = std::move(attn_out);
            lc->ln1_in = std::move(ln1_in);
            lc->ln1_xhat = std::move(ln1_xhat);
            lc->ln1_out = ln1_out;
            lc->ln1_inv_std = std::move(ln1_inv);
            lc->ffn_pre = std::move(ffn_pre);
            lc->ffn_act = std::move(ffn_act);
            lc->ln2_in = std::move(ln2_in);
            lc->ln2_xhat = std::move(ln2_xhat);
            lc->ln2_out = ln2_out;
            lc->ln2_inv_std = std::move(ln2_inv);
        }
        x = std::move(ln2_out);
    }
    if (cache) cache->h = x;
    return x;
}

MatrixXd encode_sequence(const std::vector<int>& code_ids, const std::vector<int>& type_ids,
                         const EncoderParams& params, ForwardCache* cache) {
    const MatrixXd v = embed(code_ids, type_ids, params);
    if (cache) {
        cache->code_ids = code_ids;
        cache->type_ids = type_ids;
    }
    return encode(v, params, cache);
}

void encode_backward(const ForwardCache& cache, const EncoderParams& params,
                     const MatrixXd& d_h, EncoderParams& grads) {
    const ModelConfig& cfg = params.config;
    const Eigen::Index n = cache.x0.rows();
    const int dh = cfg.head_dim();
    const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

    MatrixXd dx = d_h;
    for (int li = cfg.layers - 1; li >= 0; --li) {
        const LayerParams& l = params.layers[static_cast<size_t>(li)];
        LayerParams& g = grads.layers[static_cast<size_t>(li)];
        const LayerCache& lc = cache.layers[static_cast<size_t>(li)];

        // LN2
        MatrixXd d_ln2_in =
            layer_norm_backward(dx, lc.ln2_xhat, lc.ln2_inv_std, l.ln2_g, g.ln2_g, g.ln2_b);
        // residual: ln2_in = ln1_out + ffn_act·w2 + b2
        MatrixXd d_ln1_out = d_ln2_in;
        g.w2 += lc.ffn_act.transpose() * d_ln2_in;
        g.b2.row(0) += d_ln2_in.colwise().sum();
        MatrixXd d_act = d_ln2_in * l.w2.transpose();
        MatrixXd d_pre =
            d_act.array() * lc.ffn_pre.unaryExpr([](double t) { return gelu_derivative(t); }).array();
        g.w1 += lc.ln1_out.transpose() * d_pre;
        g.b1.row(0) += d_pre.colwise().sum();
        d_ln1_out += d_pre * l.w1.transpose();

        // LN1
        MatrixXd d_ln1_in =
            layer_norm_backward(d_ln1_out, lc.ln1_xhat, lc.ln1_inv_std, l.ln1_g, g.ln1_g, g.ln1_b);
        // residual: ln1_in = x + attn_out
        MatrixXd d_x = d_ln1_in;
        const MatrixXd& d_attn_out = d_ln1_in;
        g.wo += lc.z.transpose() * d_attn_out;
        g.bo.row(0) += d_attn_out.colwise().sum();
        MatrixXd d_z = d_attn_out * l.wo.transpose();

        MatrixXd d_q = MatrixXd::Zero(n, cfg.dim);
        MatrixXd d_k = MatrixXd::Zero(n, cfg.dim);
        MatrixXd d_v = MatrixXd::Zero(n, cfg.dim);
        for (int h = 0; h < cfg.heads; ++h) {
            const auto qh = lc.q.middleCols(h * dh, dh);
            const auto kh = lc.k.middleCols(h * dh, dh);
            const auto vh = lc.v.middleCols(h * dh, dh);
            const MatrixXd& p = lc.attn[static_cast<size_t>(h)];
            const auto d_zh = d_z.middleCols(h * dh, dh);
            MatrixXd d_p = d_zh * vh.transpose();
            d_v.middleCols(h * dh, dh) = p.transpose() * d_zh;
            // softmax rows backward
            MatrixXd d_s(n, n);
            for (Eigen::Index i = 0; i < n; ++i) {
                const double dot = d_p.row(i).dot(p.row(i));
                d_s.row(i) = (p.row(i).array() * (d_p.row(i).array() - dot)).matrix();
            }
            d_q.middleCols(h * dh, dh) = d_s * kh * scale;
            d_k.middleCols(h * dh, dh) = d_s.transpose() * qh * scale;
        }
        g.wq += lc.x_in.transpose() * d_q;
        g.bq.row(0) += d_q.colwise().sum();
        g.wk += lc.x_in.transpose() * d_k;
        g.bk.row(0) += d_k.colwise().sum();
        g.wv += lc.x_in.transpose() * d_v;
        g.bv.row(0) += d_v.colwise().sum();
        d_x += d_q * l.wq.transpose() + d_k * l.wk.transpose() + d_v * l.wv.transpose();
        dx = std::move(d_x);
    }

    // embeddings
    for (Eigen::Index i = 0; i < n; ++i) {
        grads.code_emb.row(cache.code_ids[static_cast<size_t>(i)]) += dx.row(i);
        if (cfg.use_types) grads.type_emb.row(cache.type_ids[static_cast<size_t>(i)]) += dx.row(i);
        if (cfg.use_positions) grads.pos_emb.row(i) += dx.row(i);
    }
}

}  // namespace cct::kernel
