#pragma once

#include <vector>

#include "cct/kernel/params.hpp"

namespace cct::kernel {

// V[i] = code_table[C[i]] + type_table[T[i]] (type term dropped when the
// config ignores types). Throws std::out_of_range on an out-of-vocab id.
MatrixXd embed(const std::vector<int>& code_ids, const std::vector<int>& type_ids,
               const EncoderParams& params);

// Everything the backward pass needs from one forward evaluation.
struct LayerCache {
    MatrixXd x_in;           // layer input
    MatrixXd q, k, v;        // projected
    std::vector<MatrixXd> attn;  // per-head softmax matrices (n × n)
    MatrixXd z;              // concatenated head outputs
    MatrixXd attn_out;       // z·wo + bo
    MatrixXd ln1_in, ln1_xhat, ln1_out;
    VectorXd ln1_inv_std;
    MatrixXd ffn_pre;        // ln1_out·w1 + b1
    MatrixXd ffn_act;        // gelu(ffn_pre)
    MatrixXd ln2_in, ln2_xhat, ln2_out;
    VectorXd ln2_inv_std;
};

struct ForwardCache {
    std::vector<int> code_ids, type_ids;
    MatrixXd x0;  // embeddings (+ positions)
    std::vector<LayerCache> layers;
    MatrixXd h;   // final hidden states
};

// Per-position hidden states; h_cls is row 0. Deterministic: there is no
// dropout anywhere in the desk encoder.
MatrixXd encode(const MatrixXd& v, const EncoderParams& params, ForwardCache* cache = nullptr);

// embed + encode with id bookkeeping for the embedding-table backward.
MatrixXd encode_sequence(const std::vector<int>& code_ids, const std::vector<int>& type_ids,
                         const EncoderParams& params, ForwardCache* cache = nullptr);

// Accumulates dLoss/dθ into `grads` given dLoss/dH. The cache must come
// from encode_sequence on the same params.
void encode_backward(const ForwardCache& cache, const EncoderParams& params,
                     const MatrixXd& d_h, EncoderParams& grads);

double gelu(double x);
double gelu_derivative(double x);

}  // namespace cct::kernel
