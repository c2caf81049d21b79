#include "cct/menu.hpp"

#include <fstream>

#include "cct/error.hpp"
#include "cct/parser.hpp"

namespace cct {

const char* transform_kind_name(TransformKind k) {
    switch (k) {
        case TransformKind::VarRename: return "var_rename";
        case TransformKind::FuncRename: return "func_rename";
        case TransformKind::StmtPermute: return "stmt_permute";
        case TransformKind::DataType: return "data_type_misuse";
        case TransformKind::Pointer: return "pointer_misuse";
        case TransformKind::Conditional: return "conditional_change";
        case TransformKind::VarMisuse: return "variable_misuse";
        case TransformKind::ValueMisuse: return "value_misuse";
        case TransformKind::CallMutation: return "call_mutation";
    }
    return "var_rename";
}

TransformKind transform_kind_from_name(const std::string& name) {
    for (const TransformKind k :
         {TransformKind::VarRename, TransformKind::FuncRename, TransformKind::StmtPermute,
          TransformKind::DataType, TransformKind::Pointer, TransformKind::Conditional,
          TransformKind::VarMisuse, TransformKind::ValueMisuse, TransformKind::CallMutation})
        if (name == transform_kind_name(k)) return k;
    throw ConfigError("unknown transform kind: " + name);
}

bool is_positive_kind(TransformKind k) {
    return k == TransformKind::VarRename || k == TransformKind::FuncRename ||
           k == TransformKind::StmtPermute;
}

std::vector<TransformKind> TransformMenu::kinds(bool positive) const {
    std::vector<TransformKind> out;
    for (const auto& [k, sites] : applicable)
        if (is_positive_kind(k) == positive && !sites.empty()) out.push_back(k);
    return out;
}

const std::set<std::string>& default_library_allowlist() {
    static const std::set<std::string> list = {
        "abort",   "abs",     "assert",  "atof",    "atoi",    "atol",    "bsearch",
        "calloc",  "ceil",    "cos",     "exit",    "exp",     "fabs",    "fclose",
        "fgets",   "floor",   "fopen",   "fprintf", "fputs",   "fread",   "free",
        "fscanf",  "fseek",   "ftell",   "fwrite",  "getchar", "getenv",  "gets",
        "isalnum", "isalpha", "isdigit", "isspace", "labs",    "log",     "log10",
        "log2",    "malloc",  "memcmp",  "memcpy",  "memmove", "memset",  "perror",
        "pow",     "printf",  "putchar", "puts",    "qsort",   "rand",    "realloc",
        "round",   "scanf",   "sin",     "snprintf", "sprintf", "sqrt",   "srand",
        "sscanf",  "strcat",  "strchr",  "strcmp",  "strcpy",  "strdup",  "strlen",
        "strncat", "strncmp", "strncpy", "strstr",  "strtok",  "strtol",  "strtoul",
        "system",  "tan",     "time",    "tolower", "toupper",
    };
    return list;
}

std::set<std::string> load_allowlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read allowlist: " + path);
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line[0] != '#') out.insert(line);
    }
    return out;
}

std::vector<int> compatible_replacements(const ScopeTable& scopes, int use_id) {
    std::vector<int> out;
    const Use& u = scopes.uses[static_cast<size_t>(use_id)];
    if (u.def < 0) return out;
    const Def& d = scopes.defs[static_cast<size_t>(u.def)];
    const int token_scope = scopes.scope_of_token(u.token);
    for (size_t r = 0; r < scopes.defs.size(); ++r) {
        const Def& cand = scopes.defs[r];
        if (static_cast<int>(r) == u.def) continue;
        if (cand.is_function || cand.address_taken || cand.is_const) continue;
        if (cand.type_text != d.type_text || cand.pointer_depth != d.pointer_depth ||
            cand.is_array != d.is_array)
            continue;
        if (!scopes.visible_at(static_cast<int>(r), u.token, token_scope)) continue;
        out.push_back(static_cast<int>(r));
    }
    return out;
}

std::vector<std::pair<std::string, int>> renameable_callees(
    const SyntaxTree& tree, const ScopeTable& scopes,
    const std::set<std::string>& library_allowlist) {
    (void)tree;
    std::vector<std::pair<std::string, int>> out;
    std::set<std::string> seen;
    for (size_t i = 0; i < scopes.uses.size(); ++i) {
        const Use& u = scopes.uses[i];
        if (!u.is_callee) continue;
        if (library_allowlist.count(u.name)) continue;
        // a callee bound to a local variable is a function pointer, not a name
        if (u.def >= 0 && !scopes.defs[static_cast<size_t>(u.def)].is_function) continue;
        if (!seen.insert(u.name).second) continue;
        out.emplace_back(u.name, static_cast<int>(i));
    }
    return out;
}

NodeId insertion_anchor(const SyntaxTree& tree, NodeId stmt) {
    NodeId cur = stmt;
    while (cur != kNoNode) {
        const NodeId parent = tree.node(cur).parent;
        if (parent == kNoNode) return kNoNode;
        const NodeKind pk = tree.node(parent).kind;
        if (pk == NodeKind::CompoundStmt &&
            (is_statement_kind(tree.node(cur).kind) ||
             tree.node(cur).kind == NodeKind::CompoundStmt))
            return cur;
        cur = parent;
    }
    return kNoNode;
}

int span_line_count(const std::string& text, Span span) {
    int lines = 1;
    for (uint32_t i = span.begin; i < span.end && i < text.size(); ++i)
        if (text[i] == '\n') ++lines;
    return lines;
}

namespace {

bool has_else(const SyntaxTree& t, NodeId if_stmt) {
    for (const TreeChild& c : t.node(if_stmt).children)
        if (c.is_token && t.token(c.index).text == "else") return true;
    return false;
}

const std::set<std::string> kComparisonOps = {"<", ">", "<=", ">=", "==", "!="};

}  // namespace

TransformMenu applicable_transforms(const std::string& text, const SyntaxTree& tree,
                                    const ScopeTable& scopes, const FlowGraph& graph,
                                    const std::set<std::string>& library_allowlist) {
    TransformMenu menu;
    auto add = [&menu](TransformKind k, Site s) { menu.applicable[k].push_back(s); };

    // var_rename: every parameter or local definition
    for (size_t d = 0; d < scopes.defs.size(); ++d)
        if (!scopes.defs[d].is_function)
            add(TransformKind::VarRename, Site{.def = static_cast<int>(d)});

    // func_rename: distinct non-library callees
    for (const auto& [name, use] : renameable_callees(tree, scopes, library_allowlist))
        add(TransformKind::FuncRename, Site{.use = use});

    // stmt_permute: needs at least two independent declarations
    const std::vector<NodeId> indep = independent_declarations(tree, scopes, graph);
    if (indep.size() >= 2)
        for (const NodeId d : indep) add(TransformKind::StmtPermute, Site{.node = d});

    // data-type misuse: single swappable numeric base type, non-pointer
    for (size_t d = 0; d < scopes.defs.size(); ++d) {
        const Def& def = scopes.defs[d];
        if (def.is_function || def.base_type_token < 0 || def.pointer_depth > 0) continue;
        const std::string& base = tree.token(def.base_type_token).text;
        if (base == "char") continue;  // int→char style swaps break compilability
        add(TransformKind::DataType, Site{.token = def.base_type_token, .def = static_cast<int>(d)});
    }

    // pointer misuse: initialized pointer declarations and pointer assignments
    for (size_t d = 0; d < scopes.defs.size(); ++d) {
        const Def& def = scopes.defs[d];
        if (def.is_function || def.pointer_depth == 0 || !def.has_initializer) continue;
        add(TransformKind::Pointer, Site{.node = def.init_declarator, .def = static_cast<int>(d), .tag = 0});
    }
    for (size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& n = tree.nodes[i];
        if (n.kind != NodeKind::AssignExpr || n.children.size() < 3) continue;
        if (!n.children[1].is_token || tree.token(n.children[1].index).text != "=") continue;
        const TreeChild& lhs = n.children.front();
        if (!lhs.is_token) continue;
        const int use = scopes.use_at_token(lhs.index);
        if (use < 0) continue;
        const Use& u = scopes.uses[static_cast<size_t>(use)];
        if (u.def < 0 || scopes.defs[static_cast<size_t>(u.def)].pointer_depth == 0) continue;
        const TreeChild& rhs = n.children.back();
        if (rhs.is_token && tree.token(rhs.index).text == "NULL") continue;
        add(TransformKind::Pointer, Site{.node = static_cast<NodeId>(i), .def = u.def, .tag = 1});
    }

    // conditional change: small guards and comparison operators
    for (const NodeId ifs : tree.descendants_of_kind(tree.root, NodeKind::IfStmt)) {
        if (has_else(tree, ifs)) continue;
        NodeId body = kNoNode;
        bool past_cond = false;
        for (const TreeChild& c : tree.node(ifs).children) {
            if (c.is_token) continue;
            if (!past_cond && tree.node(c.index).kind == NodeKind::ParenthesizedExpr) {
                past_cond = true;
                continue;
            }
            if (past_cond) {
                body = c.index;
                break;
            }
        }
        if (body == kNoNode) continue;
        if (span_line_count(text, tree.node_span(body)) <= 5)
            add(TransformKind::Conditional, Site{.node = ifs, .tag = 0});
    }
    for (size_t i = 0; i < tree.tokens.size(); ++i) {
        const Token& tok = tree.tokens[i];
        if (tok.term == TerminalType::Operator && tok.parent == NodeKind::BinaryExpr &&
            kComparisonOps.count(tok.text))
            add(TransformKind::Conditional, Site{.token = static_cast<int>(i), .tag = 1});
    }

    // variable misuse: a use with at least one in-scope compatible stand-in
    for (size_t u = 0; u < scopes.uses.size(); ++u) {
        const Use& use = scopes.uses[u];
        if (use.def < 0 || use.is_callee || use.in_address_of) continue;
        const Def& def = scopes.defs[static_cast<size_t>(use.def)];
        if (def.is_function || def.address_taken || def.is_const) continue;
        if (compatible_replacements(scopes, static_cast<int>(u)).empty()) continue;
        add(TransformKind::VarMisuse, Site{.use = static_cast<int>(u)});
    }

    // value misuse: droppable initializers and zeroable divisors
    for (size_t d = 0; d < scopes.defs.size(); ++d) {
        const Def& def = scopes.defs[d];
        if (def.is_function || !def.has_initializer || def.address_taken) continue;
        add(TransformKind::ValueMisuse, Site{.node = def.init_declarator, .def = static_cast<int>(d), .tag = 0});
    }
    for (const VarRef& v : find_divisors(tree, scopes)) {
        const Def& def = scopes.defs[static_cast<size_t>(v.def)];
        if (def.address_taken || def.is_const) continue;
        const Use& u = scopes.uses[static_cast<size_t>(v.use)];
        if (u.stmt == def.stmt) continue;  // cannot zero a divisor before its own declaration
        if (insertion_anchor(tree, u.stmt) == kNoNode) continue;
        add(TransformKind::ValueMisuse, Site{.def = v.def, .use = v.use, .tag = 1});
    }

    // call mutation: any call with at least one argument
    for (const NodeId call : tree.descendants_of_kind(tree.root, NodeKind::CallExpr)) {
        const std::vector<NodeId> args = tree.children_of_kind(call, NodeKind::ArgList);
        if (args.empty()) continue;
        int argc = 0;
        for (const TreeChild& c : tree.node(args.front()).children) {
            if (c.is_token && tree.token(c.index).term == TerminalType::Punctuation) continue;
            ++argc;
        }
        if (argc >= 1) add(TransformKind::CallMutation, Site{.node = call});
    }

    return menu;
}

UnitAnalysis analyze_unit(const SourceUnit& unit,
                          const std::set<std::string>& library_allowlist) {
    UnitAnalysis a;
    a.tree = parse_source(unit);
    a.scopes = resolve_scopes(a.tree);
    a.graph = build_flow_graph(a.tree, a.scopes);
    a.independent_decls = independent_declarations(a.tree, a.scopes, a.graph);
    a.divisors = find_divisors(a.tree, a.scopes);
    a.menu = applicable_transforms(unit.text, a.tree, a.scopes, a.graph, library_allowlist);
    return a;
}

}  // namespace cct
