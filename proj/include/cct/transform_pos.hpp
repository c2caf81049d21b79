#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cct/menu.hpp"
#include "cct/rewrite.hpp"
#include "cct/rng.hpp"

namespace cct {

enum class RenameMode { Abstract, RandomPool };

// Renames every parameter and local variable: abstract VAR_i names, or
// identifiers drawn from the corpus pool. The map is injective, covers the
// definition and all resolved uses, and never captures an existing name.
// Returns nullopt when nothing is renameable (or the pool is too small).
std::optional<Rewrite> rename_variables(const UnitAnalysis& a, RenameMode mode, Rng& rng,
                                        const std::vector<std::string>& identifier_pool);

// Renames each distinct non-library callee to FUNC_i in first-occurrence
// order. Allowlisted library calls are untouched. Returns nullopt when all
// callees are library calls.
std::optional<Rewrite> rename_functions(const UnitAnalysis& a,
                                        const std::set<std::string>& library_allowlist,
                                        Rng& rng);

// Hoists the independent declarations to the start of the function body in
// an rng-chosen order that differs from their original order. All other
// statements keep their relative order.
std::optional<Rewrite> permute_statements(const SourceUnit& unit, const UnitAnalysis& a,
                                          Rng& rng);

struct PositiveOptions {
    int max_compose = 3;
    std::vector<std::string> identifier_pool;
    const std::set<std::string>* library_allowlist = nullptr;  // default list when null
};

struct PositiveResult {
    std::optional<TransformedCode> code;
    std::string skip_reason;  // "no_positive_site" | "parse_failed" when !code
};

// Composes 1..max_compose applicable semantics-preserving transforms.
// The output always re-parses and differs from the input text.
PositiveResult generate_positive(const SourceUnit& unit, const UnitAnalysis& analysis,
                                 Rng& rng, const PositiveOptions& options);

// Collects every identifier token text in a unit (used both for rename
// hygiene and for harvesting the corpus identifier pool).
std::set<std::string> unit_identifiers(const SyntaxTree& tree);

}  // namespace cct
