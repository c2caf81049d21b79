#pragma once

#include <string>
#include <utility>
#include <unordered_map>
#include <vector>

#include "cct/syntax_tree.hpp"

namespace cct {

// A variable, parameter, or function definition.
struct Def {
    std::string name;
    std::string type_text;  // base type tokens joined with spaces; "" for the function itself
    int pointer_depth = 0;
    bool is_array = false;
    bool is_param = false;
    bool is_function = false;
    bool is_const = false;
    bool has_initializer = false;
    bool address_taken = false;
    int name_token = -1;        // defining identifier token
    int base_type_token = -1;   // single swappable base-type keyword, or -1
    NodeId init_declarator = kNoNode;
    NodeId stmt = kNoNode;      // DeclStmt / ParameterDeclaration / FuncDefinition
    int scope = -1;
};

// One identifier occurrence in expression context, resolved to exactly one
// definition or marked external (def == -1).
struct Use {
    std::string name;
    int token = -1;
    int def = -1;
    bool is_callee = false;
    bool in_address_of = false;
    NodeId stmt = kNoNode;  // innermost enclosing statement
};

struct Scope {
    int parent = -1;
    NodeId owner = kNoNode;
    std::vector<int> defs;
};

class ScopeTable {
public:
    std::vector<Scope> scopes;
    std::vector<Def> defs;
    std::vector<Use> uses;

    int use_at_token(int token) const {
        const auto it = use_by_token_.find(token);
        return it == use_by_token_.end() ? -1 : it->second;
    }
    int def_at_token(int token) const {
        const auto it = def_by_token_.find(token);
        return it == def_by_token_.end() ? -1 : it->second;
    }
    const std::vector<int>& uses_of_def(int def) const;

    // True when `def` is declared and visible at the position of `token`.
    bool visible_at(int def, int token, int token_scope) const;
    int scope_of_token(int token) const;

    void index();  // fills lookup tables; called by resolve_scopes
    void set_token_scopes(std::vector<int> scopes_by_token) {
        token_scope_ = std::move(scopes_by_token);
    }

private:
    std::unordered_map<int, int> use_by_token_;
    std::unordered_map<int, int> def_by_token_;
    std::vector<std::vector<int>> def_uses_;
    std::vector<int> token_scope_;
};

// Scope analysis over the tree: parameters and locals are defined, every
// identifier use binds to its innermost visible definition, and names with
// no local definition are flagged external (library symbols, globals).
ScopeTable resolve_scopes(const SyntaxTree& tree);

// The declared-name token of a declarator chain (InitDeclarator /
// PointerDeclarator / ArrayDeclarator / bare identifier).
int declarator_name_token(const SyntaxTree& tree, TreeChild declarator);

bool is_statement_kind(NodeKind k);

}  // namespace cct
