#include "cct/scopes.hpp"

#include <set>

namespace cct {

bool is_statement_kind(NodeKind k) {
    switch (k) {
        case NodeKind::DeclStmt:
        case NodeKind::ExprStmt:
        case NodeKind::IfStmt:
        case NodeKind::ForStmt:
        case NodeKind::WhileStmt:
        case NodeKind::DoStmt:
        case NodeKind::ReturnStmt:
        case NodeKind::BreakStmt:
        case NodeKind::ContinueStmt:
        case NodeKind::SwitchStmt:
        case NodeKind::CaseStmt:
        case NodeKind::GotoStmt:
        case NodeKind::LabelStmt:
            return true;
        default:
            return false;
    }
}

int declarator_name_token(const SyntaxTree& tree, TreeChild declarator) {
    while (!declarator.is_token) {
        const TreeNode& n = tree.node(declarator.index);
        switch (n.kind) {
            case NodeKind::InitDeclarator:
            case NodeKind::ArrayDeclarator:
                declarator = n.children.front();
                break;
            case NodeKind::PointerDeclarator: {
                // children: '*' token, inner declarator
                declarator = n.children.back();
                break;
            }
            default:
                return -1;
        }
    }
    const Token& t = tree.token(declarator.index);
    return t.term == TerminalType::Identifier ? declarator.index : -1;
}

const std::vector<int>& ScopeTable::uses_of_def(int def) const {
    return def_uses_[static_cast<size_t>(def)];
}

int ScopeTable::scope_of_token(int token) const {
    return token_scope_[static_cast<size_t>(token)];
}

bool ScopeTable::visible_at(int def_id, int token, int token_scope) const {
    const Def& d = defs[static_cast<size_t>(def_id)];
    for (int s = token_scope; s != -1; s = scopes[static_cast<size_t>(s)].parent)
        if (s == d.scope) return d.is_param || d.is_function || d.name_token < token;
    return false;
}

void ScopeTable::index() {
    use_by_token_.clear();
    def_by_token_.clear();
    def_uses_.assign(defs.size(), {});
    for (size_t i = 0; i < uses.size(); ++i) {
        use_by_token_[uses[i].token] = static_cast<int>(i);
        if (uses[i].def >= 0) def_uses_[static_cast<size_t>(uses[i].def)].push_back(static_cast<int>(i));
    }
    for (size_t i = 0; i < defs.size(); ++i) def_by_token_[defs[i].name_token] = static_cast<int>(i);
}

namespace {

class Resolver {
public:
    explicit Resolver(const SyntaxTree& tree) : t_(tree) {}

    ScopeTable run() {
        table_.scopes.push_back(Scope{-1, t_.root, {}});  // unit scope: the function def
        token_scope_.assign(t_.tokens.size(), 0);

        const TreeNode& fn = t_.node(t_.root);
        define_function_name(fn);

        const int fn_scope = open_scope(0, t_.root);
        // parameters
        for (const NodeId decl : t_.children_of_kind(t_.root, NodeKind::FuncDeclarator))
            for (const NodeId params : t_.children_of_kind(decl, NodeKind::ParamList))
                for (const NodeId p : t_.children_of_kind(params, NodeKind::ParameterDeclaration))
                    define_param(p, fn_scope);
        // body
        for (const TreeChild& c : fn.children)
            if (!c.is_token && t_.node(c.index).kind == NodeKind::CompoundStmt)
                walk_block(c.index, fn_scope);

        collect_uses();
        mark_address_taken();
        table_.set_token_scopes(token_scope_);
        table_.index();
        return std::move(table_);
    }

private:
    const SyntaxTree& t_;
    ScopeTable table_;
    std::vector<int> token_scope_;
    std::set<int> non_use_tokens_;  // declared names, type names, tags, labels, fields

    int open_scope(int parent, NodeId owner) {
        table_.scopes.push_back(Scope{parent, owner, {}});
        return static_cast<int>(table_.scopes.size() - 1);
    }

    void assign_scope(NodeId node, int scope) {
        const TreeNode& n = t_.node(node);
        for (int32_t i = n.first_token; i <= n.last_token; ++i)
            token_scope_[static_cast<size_t>(i)] = scope;
    }

    void define_function_name(const TreeNode& fn) {
        for (const TreeChild& c : fn.children) {
            if (c.is_token) {
                if (t_.token(c.index).term == TerminalType::Identifier)
                    non_use_tokens_.insert(c.index);  // typedef-style return type
                continue;
            }
            const TreeNode& n = t_.node(c.index);
            if (n.kind == NodeKind::FuncDeclarator) {
                const int name_tok = n.children.front().index;
                Def d;
                d.name = t_.token(name_tok).text;
                d.is_function = true;
                d.name_token = name_tok;
                d.stmt = t_.root;
                d.scope = 0;
                non_use_tokens_.insert(name_tok);
                push_def(std::move(d), 0);
            } else if (n.kind == NodeKind::StructSpecifier || n.kind == NodeKind::UnionSpecifier ||
                       n.kind == NodeKind::EnumSpecifier) {
                mark_spec_tokens(c.index);
            }
        }
    }

    void push_def(Def d, int scope) {
        table_.scopes[static_cast<size_t>(scope)].defs.push_back(static_cast<int>(table_.defs.size()));
        table_.defs.push_back(std::move(d));
    }

    void mark_spec_tokens(NodeId spec) {
        const TreeNode& n = t_.node(spec);
        for (const TreeChild& c : n.children)
            if (c.is_token) non_use_tokens_.insert(c.index);
    }

    void define_param(NodeId p, int scope) {
        assign_scope(p, scope);
        const TreeNode& n = t_.node(p);
        std::vector<int> ident_tokens;
        std::vector<std::string> type_words;
        int pointer_depth = 0;
        bool is_array = false;
        bool is_const = false;
        bool typed = false;
        for (const TreeChild& c : n.children) {
            if (!c.is_token) {
                if (t_.node(c.index).kind == NodeKind::ArrayDeclarator) is_array = true;
                mark_spec_tokens(c.index);
                typed = true;
                continue;
            }
            const Token& tok = t_.token(c.index);
            if (tok.term == TerminalType::Type) {
                type_words.push_back(tok.text);
                typed = true;
            } else if (tok.term == TerminalType::Keyword) {
                if (tok.text == "const") is_const = true;
            } else if (tok.text == "*") {
                ++pointer_depth;
            } else if (tok.text == "[") {
                is_array = true;
            } else if (tok.term == TerminalType::Identifier) {
                ident_tokens.push_back(c.index);
            }
        }
        // With a typed specifier every identifier past position 0 is the name;
        // otherwise the first identifier was the typedef-style type.
        int name_tok = -1;
        if (!ident_tokens.empty()) {
            if (typed || pointer_depth > 0) {
                name_tok = ident_tokens.back();
                if (!typed) type_words.push_back(t_.token(ident_tokens.front()).text);
                if (!typed && ident_tokens.size() < 2) name_tok = -1;
            } else if (ident_tokens.size() >= 2) {
                type_words.push_back(t_.token(ident_tokens.front()).text);
                name_tok = ident_tokens.back();
            }
        }
        for (const int tok : ident_tokens) non_use_tokens_.insert(tok);
        if (name_tok < 0) return;  // unnamed / type-only parameter

        Def d;
        d.name = t_.token(name_tok).text;
        d.is_param = true;
        d.is_const = is_const;
        d.pointer_depth = pointer_depth;
        d.is_array = is_array;
        d.name_token = name_tok;
        d.stmt = p;
        d.scope = scope;
        d.base_type_token = single_base_type_token(n);
        for (size_t i = 0; i < type_words.size(); ++i)
            d.type_text += (i ? " " : "") + type_words[i];
        push_def(std::move(d), scope);
    }

    // The one swappable numeric base-type token of a declaration, or -1.
    int single_base_type_token(const TreeNode& holder) const {
        int found = -1;
        int count = 0;
        for (const TreeChild& c : holder.children) {
            if (!c.is_token) continue;
            const Token& tok = t_.token(c.index);
            if (tok.term != TerminalType::Type) continue;
            if (tok.text == "short" || tok.text == "int" || tok.text == "long" ||
                tok.text == "float" || tok.text == "double") {
                found = c.index;
                ++count;
            }
        }
        return count == 1 ? found : -1;
    }

    void walk_block(NodeId block, int parent_scope) {
        const int scope = open_scope(parent_scope, block);
        assign_scope(block, scope);
        for (const TreeChild& c : t_.node(block).children) {
            if (c.is_token) {
                token_scope_[static_cast<size_t>(c.index)] = scope;
                continue;
            }
            walk_stmt(c.index, scope);
        }
    }

    void walk_stmt(NodeId stmt, int scope) {
        const TreeNode& n = t_.node(stmt);
        switch (n.kind) {
            case NodeKind::CompoundStmt:
                walk_block(stmt, scope);
                return;
            case NodeKind::DeclStmt:
                assign_scope(stmt, scope);
                define_locals(stmt, scope);
                return;
            case NodeKind::ForStmt: {
                const int for_scope = open_scope(scope, stmt);
                assign_scope(stmt, for_scope);
                for (const TreeChild& c : n.children) {
                    if (c.is_token) continue;
                    walk_stmt(c.index, for_scope);
                }
                return;
            }
            case NodeKind::LabelStmt:
                non_use_tokens_.insert(n.children.front().index);
                break;
            case NodeKind::GotoStmt:
                for (const TreeChild& c : n.children)
                    if (c.is_token && t_.token(c.index).term == TerminalType::Identifier)
                        non_use_tokens_.insert(c.index);
                return;
            default:
                break;
        }
        assign_scope_shallow(stmt, scope);
        for (const TreeChild& c : n.children)
            if (!c.is_token) walk_stmt_or_expr(c.index, scope);
    }

    // Tokens directly under this node live in `scope`; child statements and
    // expressions are walked separately so nested blocks re-scope themselves.
    void assign_scope_shallow(NodeId node, int scope) {
        for (const TreeChild& c : t_.node(node).children)
            if (c.is_token) token_scope_[static_cast<size_t>(c.index)] = scope;
    }

    void walk_stmt_or_expr(NodeId node, int scope) {
        const TreeNode& n = t_.node(node);
        if (n.kind == NodeKind::CompoundStmt || is_statement_kind(n.kind)) {
            walk_stmt(node, scope);
            return;
        }
        if (n.kind == NodeKind::CastExpr || n.kind == NodeKind::SizeofExpr ||
            n.kind == NodeKind::StructSpecifier || n.kind == NodeKind::UnionSpecifier ||
            n.kind == NodeKind::EnumSpecifier) {
            // identifiers inside type positions are not variable uses
            for (const TreeChild& c : n.children) {
                if (c.is_token) {
                    token_scope_[static_cast<size_t>(c.index)] = scope;
                    if (t_.token(c.index).term == TerminalType::Identifier &&
                        n.kind != NodeKind::CastExpr && n.kind != NodeKind::SizeofExpr)
                        non_use_tokens_.insert(c.index);
                } else {
                    walk_stmt_or_expr(c.index, scope);
                }
            }
            return;
        }
        if (n.kind == NodeKind::FieldExpr) {
            // children: object, op, field-name
            bool past_op = false;
            for (const TreeChild& c : n.children) {
                if (c.is_token) {
                    token_scope_[static_cast<size_t>(c.index)] = scope;
                    const Token& tok = t_.token(c.index);
                    if (past_op && tok.term == TerminalType::Identifier)
                        non_use_tokens_.insert(c.index);
                    if (tok.text == "." || tok.text == "->") past_op = true;
                } else {
                    walk_stmt_or_expr(c.index, scope);
                }
            }
            return;
        }
        assign_scope_shallow(node, scope);
        for (const TreeChild& c : n.children)
            if (!c.is_token) walk_stmt_or_expr(c.index, scope);
    }

    void define_locals(NodeId decl, int scope) {
        const TreeNode& n = t_.node(decl);
        std::vector<std::string> type_words;
        bool is_const = false;
        for (const TreeChild& c : n.children) {
            if (!c.is_token) {
                const NodeKind k = t_.node(c.index).kind;
                if (k == NodeKind::StructSpecifier || k == NodeKind::UnionSpecifier ||
                    k == NodeKind::EnumSpecifier) {
                    mark_spec_tokens(c.index);
                    type_words.push_back(t_.token_text(c.index));
                }
                continue;
            }
            const Token& tok = t_.token(c.index);
            if (tok.term == TerminalType::Type) type_words.push_back(tok.text);
            if (tok.term == TerminalType::Keyword && tok.text == "const") is_const = true;
            // typedef-style type name: identifier directly under DeclStmt that
            // is not a declarator name (those are handled below)
        }

        // identify typedef-style specifier identifiers: direct identifier
        // children that appear before any declarator child
        bool declarator_seen = false;
        for (const TreeChild& c : n.children) {
            if (!c.is_token) {
                const NodeKind k = t_.node(c.index).kind;
                if (k == NodeKind::InitDeclarator || k == NodeKind::PointerDeclarator ||
                    k == NodeKind::ArrayDeclarator)
                    declarator_seen = true;
                continue;
            }
            const Token& tok = t_.token(c.index);
            if (tok.term == TerminalType::Identifier && !declarator_seen && type_words.empty()) {
                type_words.push_back(tok.text);
                non_use_tokens_.insert(c.index);
                declarator_seen = false;
                break;  // only the leading identifier can be a type name
            }
            if (tok.term == TerminalType::Identifier) break;
        }

        std::string type_text;
        for (size_t i = 0; i < type_words.size(); ++i) type_text += (i ? " " : "") + type_words[i];

        for (const TreeChild& c : n.children) {
            int pointer_depth = 0;
            bool is_array = false;
            NodeId init_decl = kNoNode;
            bool has_init = false;
            TreeChild cur = c;
            if (cur.is_token) {
                const Token& tok = t_.token(cur.index);
                if (tok.term != TerminalType::Identifier || non_use_tokens_.count(cur.index))
                    continue;
            } else {
                const NodeKind k = t_.node(cur.index).kind;
                if (k != NodeKind::InitDeclarator && k != NodeKind::PointerDeclarator &&
                    k != NodeKind::ArrayDeclarator)
                    continue;
            }
            if (!cur.is_token && t_.node(cur.index).kind == NodeKind::InitDeclarator) {
                init_decl = cur.index;
                has_init = true;
            }
            // measure pointer depth / arrayness along the declarator chain
            TreeChild probe = cur;
            while (!probe.is_token) {
                const TreeNode& pn = t_.node(probe.index);
                if (pn.kind == NodeKind::PointerDeclarator) {
                    ++pointer_depth;
                    probe = pn.children.back();
                } else if (pn.kind == NodeKind::ArrayDeclarator) {
                    is_array = true;
                    probe = pn.children.front();
                } else if (pn.kind == NodeKind::InitDeclarator) {
                    probe = pn.children.front();
                } else {
                    break;
                }
            }
            const int name_tok = declarator_name_token(t_, cur);
            if (name_tok < 0) continue;
            non_use_tokens_.insert(name_tok);

            Def d;
            d.name = t_.token(name_tok).text;
            d.type_text = type_text;
            d.pointer_depth = pointer_depth;
            d.is_array = is_array;
            d.is_const = is_const;
            d.has_initializer = has_init;
            d.init_declarator = init_decl;
            d.name_token = name_tok;
            d.base_type_token = pointer_depth == 0 ? single_base_type_token(n) : -1;
            d.stmt = decl;
            d.scope = scope;
            push_def(std::move(d), scope);
        }
    }

    void collect_uses() {
        for (size_t i = 0; i < t_.tokens.size(); ++i) {
            const Token& tok = t_.tokens[i];
            if (tok.term != TerminalType::Identifier) continue;
            if (non_use_tokens_.count(static_cast<int>(i))) continue;
            Use u;
            u.name = tok.text;
            u.token = static_cast<int>(i);
            u.is_callee = tok.parent == NodeKind::CallExpr;
            u.def = resolve(tok.text, static_cast<int>(i));
            u.in_address_of = in_address_of(static_cast<int>(i));
            u.stmt = enclosing_statement(static_cast<int>(i));
            table_.uses.push_back(std::move(u));
        }
    }

    int resolve(const std::string& name, int token) const {
        int scope = token_scope_[static_cast<size_t>(token)];
        while (scope != -1) {
            const Scope& s = table_.scopes[static_cast<size_t>(scope)];
            int best = -1;
            for (const int d : s.defs) {
                const Def& def = table_.defs[static_cast<size_t>(d)];
                if (def.name != name) continue;
                if (def.is_param || def.is_function || def.name_token <= token) best = d;
            }
            if (best >= 0) return best;
            scope = s.parent;
        }
        return -1;
    }

    bool in_address_of(int token) const {
        NodeId p = t_.token_parent[static_cast<size_t>(token)];
        TreeChild self{true, token};
        while (p != kNoNode && t_.node(p).kind == NodeKind::ParenthesizedExpr) {
            self = TreeChild{false, p};
            p = t_.node(p).parent;
        }
        if (p == kNoNode || t_.node(p).kind != NodeKind::UnaryExpr) return false;
        const TreeNode& un = t_.node(p);
        if (un.children.empty() || !un.children.front().is_token) return false;
        if (t_.token(un.children.front().index).text != "&") return false;
        const TreeChild& operand = un.children.back();
        return operand.is_token == self.is_token && operand.index == self.index;
    }

    NodeId enclosing_statement(int token) const {
        NodeId p = t_.token_parent[static_cast<size_t>(token)];
        while (p != kNoNode && !is_statement_kind(t_.node(p).kind)) p = t_.node(p).parent;
        return p;
    }

    void mark_address_taken() {
        for (const Use& u : table_.uses)
            if (u.in_address_of && u.def >= 0)
                table_.defs[static_cast<size_t>(u.def)].address_taken = true;
    }
};

}  // namespace

ScopeTable resolve_scopes(const SyntaxTree& tree) {
    Resolver r(tree);
    return r.run();
}

}  // namespace cct
