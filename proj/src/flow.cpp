#include "cct/flow.hpp"

#include <set>
#include <sstream>

namespace cct {

namespace {

void collect_statements(const SyntaxTree& t, NodeId node, std::vector<NodeId>& out) {
    const TreeNode& n = t.node(node);
    if (is_statement_kind(n.kind)) out.push_back(node);
    for (const TreeChild& c : n.children)
        if (!c.is_token) collect_statements(t, c.index, out);
}

void chain_block(const SyntaxTree& t, NodeId block, FlowGraph& g) {
    NodeId prev = kNoNode;
    for (const TreeChild& c : t.node(block).children) {
        if (c.is_token) continue;
        const NodeKind k = t.node(c.index).kind;
        if (!is_statement_kind(k) && k != NodeKind::CompoundStmt) continue;
        if (prev != kNoNode) g.control_edges.push_back(ControlEdge{prev, c.index});
        prev = c.index;
    }
}

// The divisor operand of a / % expression, unwrapped through parentheses;
// returns its token index when it is a plain identifier, else -1.
int divisor_identifier(const SyntaxTree& t, TreeChild rhs) {
    while (!rhs.is_token) {
        const TreeNode& n = t.node(rhs.index);
        if (n.kind != NodeKind::ParenthesizedExpr) return -1;
        bool found = false;
        for (const TreeChild& c : n.children) {
            if (c.is_token && t.token(c.index).term == TerminalType::Punctuation) continue;
            rhs = c;
            found = true;
            break;
        }
        if (!found) return -1;
    }
    return t.token(rhs.index).term == TerminalType::Identifier ? rhs.index : -1;
}

}  // namespace

FlowGraph build_flow_graph(const SyntaxTree& tree, const ScopeTable& scopes) {
    FlowGraph g;
    collect_statements(tree, tree.root, g.statements);
    for (const NodeId block : tree.descendants_of_kind(tree.root, NodeKind::CompoundStmt))
        chain_block(tree, block, g);
    for (size_t i = 0; i < scopes.uses.size(); ++i)
        if (scopes.uses[i].def >= 0 && !scopes.defs[static_cast<size_t>(scopes.uses[i].def)].is_function)
            g.data_edges.push_back(DataEdge{scopes.uses[i].def, static_cast<int>(i)});
    return g;
}

std::vector<NodeId> independent_declarations(const SyntaxTree& tree, const ScopeTable& scopes,
                                             const FlowGraph& graph) {
    std::vector<NodeId> out;
    const TreeNode& fn = tree.node(tree.root);
    NodeId body = kNoNode;
    for (const TreeChild& c : fn.children)
        if (!c.is_token && tree.node(c.index).kind == NodeKind::CompoundStmt) body = c.index;
    if (body == kNoNode) return out;

    for (const NodeId decl : tree.children_of_kind(body, NodeKind::DeclStmt)) {
        const TreeNode& d = tree.node(decl);
        bool dependent = false;
        for (const DataEdge& e : graph.data_edges) {
            const Use& u = scopes.uses[static_cast<size_t>(e.use)];
            if (u.token < d.first_token || u.token > d.last_token) continue;
            const Def& def = scopes.defs[static_cast<size_t>(e.def)];
            if (def.stmt == decl) continue;  // same-statement references are not prior
            dependent = true;
            break;
        }
        if (!dependent) out.push_back(decl);
    }
    return out;
}

std::vector<VarRef> find_divisors(const SyntaxTree& tree, const ScopeTable& scopes) {
    std::vector<VarRef> out;
    std::set<int> seen_defs;
    auto consider = [&](const TreeNode& n, const std::string& op) {
        if (op != "/" && op != "%" && op != "/=" && op != "%=") return;
        // children: [lhs, op, rhs]
        if (n.children.size() < 3) return;
        const int tok = divisor_identifier(tree, n.children.back());
        if (tok < 0) return;
        const int use = scopes.use_at_token(tok);
        if (use < 0) return;
        const Use& u = scopes.uses[static_cast<size_t>(use)];
        if (u.def < 0 || scopes.defs[static_cast<size_t>(u.def)].is_function) return;
        if (!seen_defs.insert(u.def).second) return;
        out.push_back(VarRef{u.def, u.name, use});
    };
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.kind != NodeKind::BinaryExpr && n.kind != NodeKind::AssignExpr) continue;
        for (const TreeChild& c : n.children)
            if (c.is_token && tree.token(c.index).term == TerminalType::Operator) {
                consider(n, tree.token(c.index).text);
                break;
            }
    }
    return out;
}

std::string flow_graph_to_dot(const SyntaxTree& tree, const ScopeTable& scopes,
                              const FlowGraph& graph) {
    std::ostringstream out;
    out << "digraph flow {\n  node [shape=box];\n";
    for (const NodeId s : graph.statements) {
        std::string label = tree.token_text(s);
        if (label.size() > 40) label = label.substr(0, 37) + "...";
        std::string escaped;
        for (const char c : label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << "  n" << s << " [label=\"" << escaped << "\"];\n";
    }
    for (const ControlEdge& e : graph.control_edges)
        out << "  n" << e.from << " -> n" << e.to << ";\n";
    for (const DataEdge& e : graph.data_edges) {
        const Def& d = scopes.defs[static_cast<size_t>(e.def)];
        const Use& u = scopes.uses[static_cast<size_t>(e.use)];
        if (d.stmt == kNoNode || u.stmt == kNoNode) continue;
        out << "  n" << d.stmt << " -> n" << u.stmt << " [style=dashed, label=\"" << d.name
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace cct
