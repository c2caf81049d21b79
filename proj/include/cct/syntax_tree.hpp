#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cct/source.hpp"
#include "cct/token.hpp"

namespace cct {

// Concrete syntax tree. Leaves correspond 1:1 to lexical tokens; every
// node keeps the byte span it covers. Nodes live in an arena indexed by
// NodeId, tokens in a parallel array indexed by position.
using NodeId = int32_t;
constexpr NodeId kNoNode = -1;

struct TreeChild {
    bool is_token = false;
    int32_t index = 0;  // token position or NodeId
};

struct TreeNode {
    NodeKind kind = NodeKind::TranslationUnit;
    NodeId parent = kNoNode;
    std::vector<TreeChild> children;
    int32_t first_token = 0;  // inclusive token range covered by this node
    int32_t last_token = -1;  // inclusive; < first_token means empty
};

class SyntaxTree {
public:
    std::vector<Token> tokens;  // source order; parent fields filled by the parser
    std::vector<NodeId> token_parent;  // owning node of each token
    std::vector<TreeNode> nodes;
    NodeId root = kNoNode;

    const TreeNode& node(NodeId id) const { return nodes[static_cast<size_t>(id)]; }
    const Token& token(int32_t i) const { return tokens[static_cast<size_t>(i)]; }
    size_t token_count() const { return tokens.size(); }

    Span node_span(NodeId id) const {
        const TreeNode& n = node(id);
        if (n.last_token < n.first_token) return Span{0, 0};
        return Span{token(n.first_token).span.begin, token(n.last_token).span.end};
    }

    // Direct child nodes of the given kind, in order.
    std::vector<NodeId> children_of_kind(NodeId id, NodeKind kind) const;
    // All descendant nodes of the given kind (preorder), id itself included.
    std::vector<NodeId> descendants_of_kind(NodeId id, NodeKind kind) const;
    // First direct child node regardless of kind, or kNoNode.
    NodeId first_child_node(NodeId id) const;

    // Token text restored by concatenation with single spaces; used for
    // statement-level surgery where byte spans are rebuilt.
    std::string token_text(NodeId id) const;
};

}  // namespace cct
