#include <exception>
#include <fstream>
#include <iostream>

#include "cct/error.hpp"
#include "cct/kernel/train.hpp"
#include "cct/pipeline.hpp"

#include "CLI11.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Desk-scale encoder pre-training over a triplet dataset"};

    std::string data_path, checkpoint_out, curves_out, vocab_path, type_vocab_path;
    cct::kernel::TrainConfig config;
    app.add_option("--data", data_path, "triplet dataset (.jsonl)")->required();
    app.add_option("--dim", config.model.dim, "embedding/hidden dimension");
    app.add_option("--layers", config.model.layers, "encoder layers");
    app.add_option("--heads", config.model.heads, "attention heads");
    app.add_option("--max-len", config.model.max_len, "position table size; longer records are skipped");
    app.add_option("--tau", config.tau, "contrastive temperature");
    app.add_option("--lr", config.lr, "learning rate");
    app.add_option("--epochs", config.epochs, "training epochs");
    app.add_option("--seed", config.seed, "seed");
    app.add_option("--variant", config.variant,
                   "mlm | mlm+clr+ | mlm+clr± | mlm+clr±+ntmlm ('+-' works for '±')");
    app.add_option("--batch", config.batch_size, "minibatch size (anchors per batch)");
    app.add_option("--heldout-frac", config.heldout_frac, "held-out fraction");
    app.add_option("--workers", config.workers, "worker threads (any count is deterministic)");
    app.add_option("--optimizer", config.optimizer, "adam | sgd");
    app.add_flag("--bidirectional-clr", config.bidirectional_clr,
                 "average the contrastive loss over both anchor directions");
    app.add_option("--vocab", vocab_path, "tokenizer model (pins the code vocab size)");
    app.add_option("--type-vocab", type_vocab_path, "type vocabulary (pins the type vocab size)");
    app.add_option("--checkpoint", checkpoint_out, "write trained parameters here");
    app.add_option("--curves", curves_out, "write per-epoch loss/perplexity curves (CSV)");
    CLI11_PARSE(app, argc, argv);

    try {
        std::vector<cct::DatasetRecord> dataset = cct::load_dataset(data_path);
        config.epoch_callback = [](const cct::kernel::EpochStats& e) {
            std::fprintf(stderr,
                         "epoch %d  mlm %.3f  ntmlm %.3f  clr %.4f  ppl %.2f  margin %.3f\n",
                         e.epoch, e.l_mlm, e.l_ntmlm, e.l_clr, e.heldout_ppl, e.heldout_margin);
        };
        if (!vocab_path.empty())
            config.model.code_vocab = cct::SubwordTokenizer::load(vocab_path).size();
        if (!type_vocab_path.empty())
            config.model.type_vocab = cct::TypeVocab::load(type_vocab_path).size();

        const cct::kernel::TrainResult result = cct::kernel::train_loop(dataset, config);

        if (!curves_out.empty()) {
            std::ofstream out(curves_out, std::ios::binary);
            if (!out) throw cct::IoError("cannot write curves: " + curves_out);
            out << cct::kernel::curves_to_csv(result.curves);
        }
        if (!checkpoint_out.empty()) cct::kernel::save_checkpoint(result.params, checkpoint_out);

        nlohmann::ordered_json summary;
        summary["records"] = dataset.size();
        summary["train"] = result.train_count;
        summary["heldout"] = result.heldout_count;
        summary["skipped_long"] = result.skipped_long;
        summary["variant"] = config.variant;
        if (!result.curves.empty()) {
            const auto& last = result.curves.back();
            summary["final"] = {{"l_mlm", last.l_mlm},
                                {"l_ntmlm", last.l_ntmlm},
                                {"l_clr", last.l_clr},
                                {"l_total", last.l_total},
                                {"heldout_ppl", last.heldout_ppl},
                                {"heldout_margin", last.heldout_margin}};
        }
        std::cout << summary.dump() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "pretrain: " << e.what() << "\n";
        return 2;
    }
}
