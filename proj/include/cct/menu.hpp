#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "cct/flow.hpp"
#include "cct/scopes.hpp"
#include "cct/source.hpp"
#include "cct/syntax_tree.hpp"

namespace cct {

enum class TransformKind {
    // semantics preserving (positive)
    VarRename,
    FuncRename,
    StmtPermute,
    // bug injection (negative)
    DataType,
    Pointer,
    Conditional,
    VarMisuse,
    ValueMisuse,
    CallMutation,
};

const char* transform_kind_name(TransformKind k);
TransformKind transform_kind_from_name(const std::string& name);
bool is_positive_kind(TransformKind k);

// One candidate rewrite location; which fields are meaningful depends on
// the transform kind.
struct Site {
    NodeId node = kNoNode;
    int token = -1;
    int def = -1;
    int use = -1;
    int tag = 0;  // kind-specific sub-action discriminator
};

// Every transform kind with at least one valid site in the current tree.
// Kinds with zero sites are absent from the map.
struct TransformMenu {
    std::map<TransformKind, std::vector<Site>> applicable;

    bool has(TransformKind k) const { return applicable.count(k) > 0; }
    const std::vector<Site>& sites(TransformKind k) const { return applicable.at(k); }
    std::vector<TransformKind> kinds(bool positive) const;
};

const std::set<std::string>& default_library_allowlist();
std::set<std::string> load_allowlist(const std::string& path);

TransformMenu applicable_transforms(const std::string& text, const SyntaxTree& tree,
                                    const ScopeTable& scopes, const FlowGraph& graph,
                                    const std::set<std::string>& library_allowlist);

// Definitions that could stand in for the variable at `use` without
// breaking scope or type-family rules (VarMisuse candidates).
std::vector<int> compatible_replacements(const ScopeTable& scopes, int use);

// Distinct non-library callee names in first-occurrence order, each with a
// representative use index.
std::vector<std::pair<std::string, int>> renameable_callees(
    const SyntaxTree& tree, const ScopeTable& scopes,
    const std::set<std::string>& library_allowlist);

// Nearest ancestor statement that sits directly in a compound block; the
// clean insertion anchor for statement-level edits.
NodeId insertion_anchor(const SyntaxTree& tree, NodeId stmt);

// Lines covered by a node's span in `text`.
int span_line_count(const std::string& text, Span span);

// All analyses a transform needs, bundled so they are computed once.
struct UnitAnalysis {
    SyntaxTree tree;
    ScopeTable scopes;
    FlowGraph graph;
    std::vector<NodeId> independent_decls;
    std::vector<VarRef> divisors;
    TransformMenu menu;
};

// Parse + resolve + flow + menu; throws ParseError for rejected units.
UnitAnalysis analyze_unit(const SourceUnit& unit,
                          const std::set<std::string>& library_allowlist);

}  // namespace cct
