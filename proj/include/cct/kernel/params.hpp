#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "cct/rng.hpp"

namespace cct::kernel {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct ModelConfig {
    int code_vocab = 0;
    int type_vocab = 0;
    int dim = 64;
    int layers = 2;
    int heads = 4;
    int ff_dim = 0;  // 0 → 4 * dim
    int max_len = 512;
    bool use_positions = true;
    bool use_types = true;  // add type embeddings and train the NT-MLM head
    double ln_eps = 1e-5;

    int ff() const { return ff_dim > 0 ? ff_dim : 4 * dim; }
    int head_dim() const { return dim / heads; }
};

struct LayerParams {
    MatrixXd wq, wk, wv, wo;        // dim × dim
    MatrixXd bq, bk, bv, bo;        // 1 × dim
    MatrixXd ln1_g, ln1_b;          // 1 × dim
    MatrixXd w1, b1;                // dim × ff, 1 × ff
    MatrixXd w2, b2;                // ff × dim, 1 × dim
    MatrixXd ln2_g, ln2_b;          // 1 × dim
};

// Every trainable tensor: embedding tables, encoder layers, and the two
// output projections. The same instance encodes x, x⁺ and x⁻; there are no
// per-branch weights anywhere.
struct EncoderParams {
    ModelConfig config;
    MatrixXd code_emb;  // code_vocab × dim
    MatrixXd type_emb;  // type_vocab × dim
    MatrixXd pos_emb;   // max_len × dim
    std::vector<LayerParams> layers;
    MatrixXd w_mlm, b_mlm;  // dim × code_vocab, 1 × code_vocab
    MatrixXd w_nt, b_nt;    // dim × type_vocab, 1 × type_vocab

    static EncoderParams zeros(const ModelConfig& config);
    static EncoderParams randomized(const ModelConfig& config, Rng& rng, double stddev);

    // Named views over every tensor, in a fixed order.
    std::vector<std::pair<std::string, MatrixXd*>> tensors();
    std::vector<std::pair<std::string, const MatrixXd*>> tensors() const;

    size_t parameter_count() const;
    void set_zero();
    void add_scaled(const EncoderParams& other, double scale);
    bool all_finite() const;
};

void save_checkpoint(const EncoderParams& params, const std::string& path);
EncoderParams load_checkpoint(const std::string& path);

}  // namespace cct::kernel
