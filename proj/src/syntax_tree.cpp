#include "cct/syntax_tree.hpp"

namespace cct {

std::vector<NodeId> SyntaxTree::children_of_kind(NodeId id, NodeKind kind) const {
    std::vector<NodeId> out;
    for (const TreeChild& c : node(id).children)
        if (!c.is_token && node(c.index).kind == kind) out.push_back(c.index);
    return out;
}

std::vector<NodeId> SyntaxTree::descendants_of_kind(NodeId id, NodeKind kind) const {
    std::vector<NodeId> out;
    std::vector<NodeId> stack{id};
    while (!stack.empty()) {
        const NodeId cur = stack.back();
        stack.pop_back();
        if (node(cur).kind == kind) out.push_back(cur);
        const auto& ch = node(cur).children;
        for (auto it = ch.rbegin(); it != ch.rend(); ++it)
            if (!it->is_token) stack.push_back(it->index);
    }
    return out;
}

NodeId SyntaxTree::first_child_node(NodeId id) const {
    for (const TreeChild& c : node(id).children)
        if (!c.is_token) return c.index;
    return kNoNode;
}

std::string SyntaxTree::token_text(NodeId id) const {
    std::string out;
    const TreeNode& n = node(id);
    for (int32_t i = n.first_token; i <= n.last_token; ++i) {
        if (!out.empty()) out += ' ';
        out += token(i).text;
    }
    return out;
}

}  // namespace cct
