#include <cstdio>
#include <exception>
#include <iostream>

#include "cct/error.hpp"
#include "cct/pipeline.hpp"

#include "CLI11.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Build (original, clone, bug-injected) triplets from a C corpus"};

    cct::AugmentConfig config;
    std::string lang = "c";
    app.add_option("--lang", lang, "source language")->default_str("c");
    app.add_option("--input", config.inputs, "input files or directories")->required();
    app.add_option("--out", config.out_path, "output dataset (.jsonl)")->required();
    app.add_option("--seed", config.seed, "master seed");
    app.add_option("--vocab", config.vocab_path,
                   "tokenizer model path; trained on the corpus and written here when absent")
        ->required();
    app.add_option("--type-vocab", config.type_vocab_path,
                   "type vocabulary path (default: <vocab>.types)");
    app.add_option("--vocab-size", config.vocab_size, "vocabulary size when training the tokenizer");
    app.add_option("--max-compose", config.max_compose, "max positive transforms per clone");
    app.add_option("--edit-bound", config.edit_bound, "max token edits between x and x-");
    app.add_option("--min-tokens", config.filters.min_tokens, "drop functions shorter than this");
    app.add_option("--max-tokens", config.filters.max_tokens, "drop functions longer than this");
    app.add_flag("--compile-check", config.compile_check,
                 "additionally require cc -fsyntax-only to accept every triplet member");
    app.add_option("--dump-flow-dot", config.flow_dot_dir,
                   "write per-unit flow graphs as DOT files into this directory");
    app.add_option("--cwe-map", config.cwe_map_path, "override the builtin family→CWE data file");
    app.add_option("--allowlist", config.allowlist_path,
                   "extend the builtin C library allowlist from a file (one name per line)");
    app.add_option("--workers", config.workers,
                   "triplet-construction threads (output is identical for any count)");
    CLI11_PARSE(app, argc, argv);

    try {
        config.language = cct::language_from_name(lang);
        const cct::RunStats stats = cct::run_augment(config);
        std::cout << stats.to_json() << "\n";
        return stats.emitted >= 1 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "augment: " << e.what() << "\n";
        return 2;
    }
}
