#include "cct/kernel/params.hpp"

#include <fstream>

#include "cct/error.hpp"

#include "json.hpp"

namespace cct::kernel {

namespace {

void fill_gauss(MatrixXd& m, Rng& rng, double stddev) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.gauss() * stddev;
}

}  // namespace

EncoderParams EncoderParams::zeros(const ModelConfig& config) {
    EncoderParams p;
    p.config = config;
    const int d = config.dim;
    p.code_emb = MatrixXd::Zero(config.code_vocab, d);
    p.type_emb = MatrixXd::Zero(config.type_vocab, d);
    p.pos_emb = MatrixXd::Zero(config.max_len, d);
    p.layers.resize(static_cast<size_t>(config.layers));
    for (LayerParams& l : p.layers) {
        l.wq = l.wk = l.wv = l.wo = MatrixXd::Zero(d, d);
        l.bq = l.bk = l.bv = l.bo = MatrixXd::Zero(1, d);
        l.ln1_g = MatrixXd::Ones(1, d);
        l.ln1_b = MatrixXd::Zero(1, d);
        l.w1 = MatrixXd::Zero(d, config.ff());
        l.b1 = MatrixXd::Zero(1, config.ff());
        l.w2 = MatrixXd::Zero(config.ff(), d);
        l.b2 = MatrixXd::Zero(1, d);
        l.ln2_g = MatrixXd::Ones(1, d);
        l.ln2_b = MatrixXd::Zero(1, d);
    }
    p.w_mlm = MatrixXd::Zero(d, config.code_vocab);
    p.b_mlm = MatrixXd::Zero(1, config.code_vocab);
    p.w_nt = MatrixXd::Zero(d, config.type_vocab);
    p.b_nt = MatrixXd::Zero(1, config.type_vocab);
    return p;
}

EncoderParams EncoderParams::randomized(const ModelConfig& config, Rng& rng, double stddev) {
    EncoderParams p = zeros(config);
    for (auto& [name, tensor] : p.tensors()) {
        if (name.find("ln") != std::string::npos) continue;  // keep LN at identity
        fill_gauss(*tensor, rng, stddev);
    }
    return p;
}

std::vector<std::pair<std::string, MatrixXd*>> EncoderParams::tensors() {
    std::vector<std::pair<std::string, MatrixXd*>> out;
    out.emplace_back("code_emb", &code_emb);
    out.emplace_back("type_emb", &type_emb);
    out.emplace_back("pos_emb", &pos_emb);
    for (size_t i = 0; i < layers.size(); ++i) {
        const std::string p = "layer" + std::to_string(i) + ".";
        LayerParams& l = layers[i];
        out.emplace_back(p + "wq", &l.wq);
        out.emplace_back(p + "wk", &l.wk);
        out.emplace_back(p + "wv", &l.wv);
        out.emplace_back(p + "wo", &l.wo);
        out.emplace_back(p + "bq", &l.bq);
        out.emplace_back(p + "bk", &l.bk);
        out.emplace_back(p + "bv", &l.bv);
        out.emplace_back(p + "bo", &l.bo);
        out.emplace_back(p + "ln1_g", &l.ln1_g);
        out.emplace_back(p + "ln1_b", &l.ln1_b);
        out.emplace_back(p + "w1", &l.w1);
        out.emplace_back(p + "b1", &l.b1);
        out.emplace_back(p + "w2", &l.w2);
        out.emplace_back(p + "b2", &l.b2);
        out.emplace_back(p + "ln2_g", &l.ln2_g);
        out.emplace_back(p + "ln2_b", &l.ln2_b);
    }
    out.emplace_back("w_mlm", &w_mlm);
    out.emplace_back("b_mlm", &b_mlm);
    out.emplace_back("w_nt", &w_nt);
    out.emplace_back("b_nt", &b_nt);
    return out;
}

std::vector<std::pair<std::string, const MatrixXd*>> EncoderParams::tensors() const {
    std::vector<std::pair<std::string, const MatrixXd*>> out;
    for (auto& [name, tensor] : const_cast<EncoderParams*>(this)->tensors())
        out.emplace_back(name, tensor);
    return out;
}

size_t EncoderParams::parameter_count() const {
    size_t n = 0;
    for (const auto& [name, tensor] : tensors()) n += static_cast<size_t>(tensor->size());
    return n;
}

void EncoderParams::set_zero() {
    for (auto& [name, tensor] : tensors()) tensor->setZero();
}

void EncoderParams::add_scaled(const EncoderParams& other, double scale) {
    auto mine = tensors();
    const auto theirs = other.tensors();
    for (size_t i = 0; i < mine.size(); ++i) *mine[i].second += scale * *theirs[i].second;
}

bool EncoderParams::all_finite() const {
    for (const auto& [name, tensor] : tensors())
        if (!tensor->allFinite()) return false;
    return true;
}

void save_checkpoint(const EncoderParams& params, const std::string& path) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["config"] = {
        {"code_vocab", params.config.code_vocab}, {"type_vocab", params.config.type_vocab},
        {"dim", params.config.dim},               {"layers", params.config.layers},
        {"heads", params.config.heads},           {"ff_dim", params.config.ff_dim},
        {"max_len", params.config.max_len},       {"use_positions", params.config.use_positions},
        {"use_types", params.config.use_types},   {"ln_eps", params.config.ln_eps},
    };
    nlohmann::ordered_json tensors;
    for (const auto& [name, tensor] : params.tensors()) {
        std::vector<double> data(static_cast<size_t>(tensor->size()));
        for (Eigen::Index i = 0; i < tensor->rows(); ++i)
            for (Eigen::Index j = 0; j < tensor->cols(); ++j)
                data[static_cast<size_t>(i * tensor->cols() + j)] = (*tensor)(i, j);
        tensors[name] = {{"shape", {tensor->rows(), tensor->cols()}}, {"data", data}};
    }
    doc["tensors"] = std::move(tensors);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint: " + path);
    out << doc.dump() << "\n";
}

EncoderParams load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read checkpoint: " + path);
    nlohmann::json doc;
    in >> doc;
    if (doc.at("version").get<int>() != 1) throw IoError("unsupported checkpoint version");
    const auto& c = doc.at("config");
    ModelConfig config;
    config.code_vocab = c.at("code_vocab").get<int>();
    config.type_vocab = c.at("type_vocab").get<int>();
    config.dim = c.at("dim").get<int>();
    config.layers = c.at("layers").get<int>();
    config.heads = c.at("heads").get<int>();
    config.ff_dim = c.at("ff_dim").get<int>();
    config.max_len = c.at("max_len").get<int>();
    config.use_positions = c.at("use_positions").get<bool>();
    config.use_types = c.at("use_types").get<bool>();
    config.ln_eps = c.at("ln_eps").get<double>();
    EncoderParams params = EncoderParams::zeros(config);
    for (auto& [name, tensor] : params.tensors()) {
        const auto& entry = doc.at("tensors").at(name);
        const auto shape = entry.at("shape").get<std::vector<Eigen::Index>>();
        if (shape.size() != 2 || shape[0] != tensor->rows() || shape[1] != tensor->cols())
            throw IoError("checkpoint shape mismatch for " + name);
        const auto data = entry.at("data").get<std::vector<double>>();
        if (static_cast<Eigen::Index>(data.size()) != tensor->size())
            throw IoError("checkpoint size mismatch for " + name);
        for (Eigen::Index i = 0; i < tensor->rows(); ++i)
            for (Eigen::Index j = 0; j < tensor->cols(); ++j)
                (*tensor)(i, j) = data[static_cast<size_t>(i * tensor->cols() + j)];
    }
    return params;
}

}  // namespace cct::kernel
