#pragma once

#include <string>
#include <vector>

#include "cct/scopes.hpp"
#include "cct/syntax_tree.hpp"

namespace cct {

// A variable occurrence of interest (e.g. a divisor operand).
struct VarRef {
    int def = -1;
    std::string name;
    int use = -1;  // representative use index
};

struct ControlEdge {
    NodeId from = kNoNode;
    NodeId to = kNoNode;
};

struct DataEdge {
    int def = -1;
    int use = -1;
};

// Statement-level control successors plus identifier-level def→use edges.
// Intra-function only.
struct FlowGraph {
    std::vector<NodeId> statements;  // preorder, compounds excluded
    std::vector<ControlEdge> control_edges;
    std::vector<DataEdge> data_edges;
};

FlowGraph build_flow_graph(const SyntaxTree& tree, const ScopeTable& scopes);

// Function-body top-level declaration statements whose initializers (and
// array sizes) reference no prior local definition; safe to hoist to the
// start of the function and permute.
std::vector<NodeId> independent_declarations(const SyntaxTree& tree, const ScopeTable& scopes,
                                             const FlowGraph& graph);

// Variables appearing at least once as the divisor operand of / % /= %=.
// Literal divisors are excluded; the result is deduplicated per definition.
std::vector<VarRef> find_divisors(const SyntaxTree& tree, const ScopeTable& scopes);

std::string flow_graph_to_dot(const SyntaxTree& tree, const ScopeTable& scopes,
                              const FlowGraph& graph);

}  // namespace cct
