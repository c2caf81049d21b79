#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cct/menu.hpp"
#include "cct/rewrite.hpp"
#include "cct/rng.hpp"

namespace cct {

// The injected bug family plus its vulnerability-class tags.
struct BugTag {
    TransformKind family = TransformKind::DataType;
    std::vector<std::string> cwe_ids;
};

using CweMap = std::map<TransformKind, std::vector<std::string>>;

// family → CWE ids, shipped as a versioned data file and mirrored here.
const CweMap& default_cwe_map();
CweMap load_cwe_map(const std::string& path);
void save_cwe_map(const std::string& path, const CweMap& map);

// One declaration's base type swapped within its numeric family
// (long→short style; char is never touched).
std::optional<Rewrite> misuse_data_type(const UnitAnalysis& a, Rng& rng);

// Drops a pointer initializer or points a pointer at NULL.
std::optional<Rewrite> misuse_pointer(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng);

// Removes a small if-guard (≤ 5 lines of body) or replaces one comparison
// operator with another from { < > <= >= == != }.
std::optional<Rewrite> mutate_conditional(const SourceUnit& unit, const UnitAnalysis& a,
                                          Rng& rng);

// Swaps one variable use for a different type-compatible variable reachable
// at the same point.
std::optional<Rewrite> misuse_variable(const UnitAnalysis& a, Rng& rng);

// Drops an initializer or zeroes a divisor right before its division.
std::optional<Rewrite> misuse_value(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng);

// Adds, removes, swaps (same parse kind only), or NULLs one call argument.
std::optional<Rewrite> mutate_call(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng);

struct NegativeOptions {
    int edit_bound = 8;  // max token-level edit distance of x⁻ from x
    const CweMap* cwe_map = nullptr;
};

struct NegativeResult {
    std::optional<TransformedCode> code;
    BugTag tag;
    std::string skip_reason;  // "no_negative_site" when !code
};

// Applies exactly one bug family chosen from the menu; the result re-parses
// and stays within [1, edit_bound] token edits of the original.
NegativeResult generate_negative(const SourceUnit& unit, const UnitAnalysis& analysis,
                                 Rng& rng, const NegativeOptions& options);

}  // namespace cct
