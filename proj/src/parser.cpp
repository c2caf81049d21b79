#include "cct/parser.hpp"

#include <cctype>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "cct/error.hpp"

namespace cct {

namespace {

const std::unordered_set<std::string_view> kQualifiers = {
    "const", "volatile", "static", "extern", "register", "inline", "auto", "restrict",
};

const std::unordered_map<std::string_view, int> kBinaryPrec = {
    {"||", 1}, {"&&", 2}, {"|", 3}, {"^", 4}, {"&", 5},
    {"==", 6}, {"!=", 6},
    {"<", 7}, {">", 7}, {"<=", 7}, {">=", 7},
    {"<<", 8}, {">>", 8},
    {"+", 9}, {"-", 9},
    {"*", 10}, {"/", 10}, {"%", 10},
};

const std::unordered_set<std::string_view> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=",
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) {
        tree_.tokens = std::move(tokens);
        tree_.token_parent.assign(tree_.tokens.size(), kNoNode);
    }

    SyntaxTree parse_unit() {
        tree_.root = parse_function_definition();
        if (!at_end()) fail("trailing tokens after function definition");
        finalize(tree_.root);
        return std::move(tree_);
    }

private:
    SyntaxTree tree_;
    size_t pos_ = 0;

    // ---- token cursor ----
    bool at_end() const { return pos_ >= tree_.tokens.size(); }
    const Token& cur() const {
        if (at_end()) fail("unexpected end of input");
        return tree_.tokens[pos_];
    }
    const Token* peek(size_t k) const {
        return pos_ + k < tree_.tokens.size() ? &tree_.tokens[pos_ + k] : nullptr;
    }
    bool is_text(std::string_view s) const { return !at_end() && cur().text == s; }
    bool is_term(TerminalType t) const { return !at_end() && cur().term == t; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::string at = at_end() ? "<eof>" : tree_.tokens[pos_].text;
        throw ParseError(msg + " (near '" + at + "', token " + std::to_string(pos_) + ")");
    }

    // ---- tree building ----
    NodeId make_node(NodeKind kind) {
        tree_.nodes.push_back(TreeNode{kind, kNoNode, {}, 0, -1});
        return static_cast<NodeId>(tree_.nodes.size() - 1);
    }
    void attach_node(NodeId parent, NodeId child) {
        tree_.nodes[child].parent = parent;
        tree_.nodes[parent].children.push_back(TreeChild{false, child});
    }
    void attach_child(NodeId parent, TreeChild c) {
        if (c.is_token) attach_token_at(parent, static_cast<size_t>(c.index));
        else attach_node(parent, c.index);
    }
    void attach_token_at(NodeId parent, size_t idx) {
        tree_.tokens[idx].parent = tree_.nodes[parent].kind;
        tree_.token_parent[idx] = parent;
        tree_.nodes[parent].children.push_back(TreeChild{true, static_cast<int32_t>(idx)});
    }
    // consume the current token into `parent`
    void eat(NodeId parent) {
        if (at_end()) fail("unexpected end of input");
        attach_token_at(parent, pos_++);
    }
    void expect(NodeId parent, std::string_view text) {
        if (!is_text(text)) fail("expected '" + std::string(text) + "'");
        eat(parent);
    }
    TreeChild take_token() {
        if (at_end()) fail("unexpected end of input");
        return TreeChild{true, static_cast<int32_t>(pos_++)};
    }

    void finalize(NodeId id) {
        TreeNode& n = tree_.nodes[id];
        int32_t lo = INT32_MAX, hi = -1;
        for (const TreeChild& c : n.children) {
            int32_t a, b;
            if (c.is_token) {
                a = b = c.index;
            } else {
                finalize(c.index);
                a = tree_.nodes[c.index].first_token;
                b = tree_.nodes[c.index].last_token;
                if (b < a) continue;
            }
            if (a < lo) lo = a;
            if (b > hi) hi = b;
        }
        n.first_token = lo == INT32_MAX ? 0 : lo;
        n.last_token = hi;
    }

    // ---- classification helpers ----
    bool is_qualifier() const { return is_term(TerminalType::Keyword) && kQualifiers.count(cur().text); }
    bool is_struct_kw() const {
        return is_term(TerminalType::Keyword) &&
               (cur().text == "struct" || cur().text == "union" || cur().text == "enum");
    }
    bool is_assign_op() const { return is_term(TerminalType::Operator) && kAssignOps.count(cur().text); }

    bool looks_like_declaration() const {
        if (is_term(TerminalType::Type) || is_qualifier() || is_struct_kw()) return true;
        if (!is_term(TerminalType::Identifier)) return false;
        // typedef-name heuristic: IDENT '*'* IDENT followed by ; = , [
        size_t k = 1;
        while (peek(k) && peek(k)->text == "*") ++k;
        const Token* name = peek(k);
        if (!name || name->term != TerminalType::Identifier) return false;
        const Token* after = peek(k + 1);
        if (!after) return false;
        return after->text == ";" || after->text == "=" || after->text == "," ||
               after->text == "[";
    }

    // ---- declarations ----
    // Consumes qualifiers, base type tokens, struct/union/enum specifiers, or a
    // typedef-style type name. Returns false if nothing was consumed.
    bool parse_specifiers(NodeId parent) {
        bool any = false;
        bool base_seen = false;
        while (!at_end()) {
            if (is_qualifier()) {
                eat(parent);
                any = true;
                continue;
            }
            if (is_term(TerminalType::Type)) {
                eat(parent);
                any = base_seen = true;
                continue;
            }
            if (is_struct_kw()) {
                NodeKind k = cur().text == "struct"  ? NodeKind::StructSpecifier
                             : cur().text == "union" ? NodeKind::UnionSpecifier
                                                     : NodeKind::EnumSpecifier;
                const NodeId spec = make_node(k);
                eat(spec);
                if (!is_term(TerminalType::Identifier)) fail("expected tag name");
                eat(spec);
                attach_node(parent, spec);
                any = base_seen = true;
                continue;
            }
            if (!base_seen && is_term(TerminalType::Identifier)) {
                // typedef name only when a declarator plausibly follows
                size_t k = 1;
                while (peek(k) && peek(k)->text == "*") ++k;
                const Token* nxt = peek(k);
                if (nxt && nxt->term == TerminalType::Identifier) {
                    eat(parent);
                    any = base_seen = true;
                    continue;
                }
            }
            break;
        }
        return any;
    }

    const Token* declarator_name_ahead() const {
        size_t k = 0;
        while (peek(k) && peek(k)->text == "*") ++k;
        return peek(k);
    }

    // declarator := '*' declarator | IDENT ('[' const-expr? ']')*
    TreeChild parse_declarator() {
        if (is_text("*")) {
            const NodeId ptr = make_node(NodeKind::PointerDeclarator);
            eat(ptr);
            attach_child(ptr, parse_declarator());
            return TreeChild{false, ptr};
        }
        if (!is_term(TerminalType::Identifier)) fail("expected declarator name");
        TreeChild d = take_token();
        while (is_text("[")) {
            const NodeId arr = make_node(NodeKind::ArrayDeclarator);
            attach_child(arr, d);
            expect(arr, "[");
            if (!is_text("]")) attach_child(arr, parse_cond());
            expect(arr, "]");
            d = TreeChild{false, arr};
        }
        return d;
    }

    TreeChild parse_initializer() {
        if (is_text("{")) {
            const NodeId lst = make_node(NodeKind::InitList);
            expect(lst, "{");
            if (!is_text("}")) {
                attach_child(lst, parse_initializer());
                while (is_text(",")) {
                    eat(lst);
                    if (is_text("}")) break;  // trailing comma
                    attach_child(lst, parse_initializer());
                }
            }
            expect(lst, "}");
            return TreeChild{false, lst};
        }
        return parse_assign();
    }

    TreeChild parse_init_declarator() {
        TreeChild d = parse_declarator();
        if (is_text("=")) {
            const NodeId init = make_node(NodeKind::InitDeclarator);
            attach_child(init, d);
            eat(init);  // '='
            attach_child(init, parse_initializer());
            return TreeChild{false, init};
        }
        return d;
    }

    NodeId parse_declaration() {
        const NodeId decl = make_node(NodeKind::DeclStmt);
        if (!parse_specifiers(decl)) fail("expected declaration specifiers");
        if (!is_text(";")) {
            attach_child(decl, parse_init_declarator());
            while (is_text(",")) {
                eat(decl);
                attach_child(decl, parse_init_declarator());
            }
        }
        expect(decl, ";");
        return decl;
    }

    // ---- expressions ----
    TreeChild parse_expr() {
        TreeChild first = parse_assign();
        if (!is_text(",")) return first;
        const NodeId seq = make_node(NodeKind::CommaExpr);
        attach_child(seq, first);
        while (is_text(",")) {
            eat(seq);
            attach_child(seq, parse_assign());
        }
        return TreeChild{false, seq};
    }

    TreeChild parse_assign() {
        TreeChild lhs = parse_cond();
        if (is_assign_op()) {
            const NodeId asn = make_node(NodeKind::AssignExpr);
            attach_child(asn, lhs);
            eat(asn);
            attach_child(asn, parse_assign());
            return TreeChild{false, asn};
        }
        return lhs;
    }

    TreeChild parse_cond() {
        TreeChild c = parse_binary(1);
        if (is_text("?")) {
            const NodeId cond = make_node(NodeKind::CondExpr);
            attach_child(cond, c);
            eat(cond);  // '?'
            attach_child(cond, parse_expr());
            if (!is_text(":")) fail("expected ':' in conditional");
            eat(cond);
            attach_child(cond, parse_assign());
            return TreeChild{false, cond};
        }
        return c;
    }

    TreeChild parse_binary(int min_prec) {
        TreeChild left = parse_unary();
        while (!at_end() && is_term(TerminalType::Operator)) {
            const auto it = kBinaryPrec.find(cur().text);
            if (it == kBinaryPrec.end() || it->second < min_prec) break;
            const NodeId bin = make_node(NodeKind::BinaryExpr);
            attach_child(bin, left);
            eat(bin);  // operator
            attach_child(bin, parse_binary(it->second + 1));
            left = TreeChild{false, bin};
        }
        return left;
    }

    bool at_cast() const {
        if (!is_text("(")) return false;
        const Token* t = peek(1);
        if (!t) return false;
        if (t->term == TerminalType::Type) return true;
        return t->term == TerminalType::Keyword &&
               (t->text == "struct" || t->text == "union" || t->text == "enum" ||
                t->text == "const" || t->text == "volatile");
    }

    TreeChild parse_unary() {
        if (is_term(TerminalType::Operator)) {
            const std::string_view op = cur().text;
            if (op == "++" || op == "--") {
                const NodeId upd = make_node(NodeKind::UpdateExpr);
                eat(upd);
                attach_child(upd, parse_unary());
                return TreeChild{false, upd};
            }
            if (op == "!" || op == "~" || op == "+" || op == "-" || op == "*" || op == "&") {
                const NodeId un = make_node(NodeKind::UnaryExpr);
                eat(un);
                attach_child(un, parse_unary());
                return TreeChild{false, un};
            }
        }
        if (is_text("sizeof")) {
            const NodeId sz = make_node(NodeKind::SizeofExpr);
            eat(sz);
            if (is_text("(") && peek(1) &&
                (peek(1)->term == TerminalType::Type ||
                 (peek(1)->term == TerminalType::Keyword &&
                  (peek(1)->text == "struct" || peek(1)->text == "union" ||
                   peek(1)->text == "enum" || peek(1)->text == "const")))) {
                eat(sz);  // '('
                if (!parse_specifiers(sz)) fail("expected type in sizeof");
                while (is_text("*")) eat(sz);
                expect(sz, ")");
            } else {
                attach_child(sz, parse_unary());
            }
            return TreeChild{false, sz};
        }
        if (at_cast()) {
            const NodeId cast = make_node(NodeKind::CastExpr);
            eat(cast);  // '('
            if (!parse_specifiers(cast)) fail("expected type in cast");
            while (is_text("*")) eat(cast);
            expect(cast, ")");
            attach_child(cast, parse_unary());
            return TreeChild{false, cast};
        }
        return parse_postfix();
    }

    TreeChild parse_postfix() {
        TreeChild e = parse_primary();
        while (!at_end()) {
            if (is_text("(")) {
                const NodeId call = make_node(NodeKind::CallExpr);
                attach_child(call, e);
                const NodeId args = make_node(NodeKind::ArgList);
                expect(args, "(");
                if (!is_text(")")) {
                    attach_child(args, parse_assign());
                    while (is_text(",")) {
                        eat(args);
                        attach_child(args, parse_assign());
                    }
                }
                expect(args, ")");
                attach_node(call, args);
                e = TreeChild{false, call};
                continue;
            }
            if (is_text("[")) {
                const NodeId sub = make_node(NodeKind::SubscriptExpr);
                attach_child(sub, e);
                eat(sub);  // '['
                attach_child(sub, parse_expr());
                expect(sub, "]");
                e = TreeChild{false, sub};
                continue;
            }
            if (is_text(".") || is_text("->")) {
                const NodeId fld = make_node(NodeKind::FieldExpr);
                attach_child(fld, e);
                eat(fld);
                if (!is_term(TerminalType::Identifier)) fail("expected field name");
                eat(fld);
                e = TreeChild{false, fld};
                continue;
            }
            if (is_text("++") || is_text("--")) {
                const NodeId upd = make_node(NodeKind::UpdateExpr);
                attach_child(upd, e);
                eat(upd);
                e = TreeChild{false, upd};
                continue;
            }
            break;
        }
        return e;
    }

    TreeChild parse_primary() {
        if (is_term(TerminalType::Identifier) || is_term(TerminalType::NumberLiteral) ||
            is_term(TerminalType::StringLiteral) || is_term(TerminalType::CharLiteral))
            return take_token();
        if (is_text("(")) {
            const NodeId paren = make_node(NodeKind::ParenthesizedExpr);
            eat(paren);
            attach_child(paren, parse_expr());
            expect(paren, ")");
            return TreeChild{false, paren};
        }
        fail("expected expression");
    }

    NodeId parse_parenthesized_condition() {
        const NodeId paren = make_node(NodeKind::ParenthesizedExpr);
        expect(paren, "(");
        attach_child(paren, parse_expr());
        expect(paren, ")");
        return paren;
    }

    // ---- statements ----
    NodeId parse_compound() {
        const NodeId blk = make_node(NodeKind::CompoundStmt);
        expect(blk, "{");
        while (!is_text("}")) attach_node(blk, parse_statement());
        expect(blk, "}");
        return blk;
    }

    NodeId parse_statement() {
        if (is_text("{")) return parse_compound();
        if (is_text(";")) {
            const NodeId s = make_node(NodeKind::ExprStmt);
            eat(s);
            return s;
        }
        if (is_text("if")) {
            const NodeId s = make_node(NodeKind::IfStmt);
            eat(s);
            attach_node(s, parse_parenthesized_condition());
            attach_node(s, parse_statement());
            if (is_text("else")) {
                eat(s);
                attach_node(s, parse_statement());
            }
            return s;
        }
        if (is_text("while")) {
            const NodeId s = make_node(NodeKind::WhileStmt);
            eat(s);
            attach_node(s, parse_parenthesized_condition());
            attach_node(s, parse_statement());
            return s;
        }
        if (is_text("do")) {
            const NodeId s = make_node(NodeKind::DoStmt);
            eat(s);
            attach_node(s, parse_statement());
            if (!is_text("while")) fail("expected 'while' after do-body");
            eat(s);
            attach_node(s, parse_parenthesized_condition());
            expect(s, ";");
            return s;
        }
        if (is_text("for")) {
            const NodeId s = make_node(NodeKind::ForStmt);
            eat(s);
            expect(s, "(");
            if (looks_like_declaration()) {
                attach_node(s, parse_declaration());
            } else {
                if (!is_text(";")) attach_child(s, parse_expr());
                expect(s, ";");
            }
            if (!is_text(";")) attach_child(s, parse_expr());
            expect(s, ";");
            if (!is_text(")")) attach_child(s, parse_expr());
            expect(s, ")");
            attach_node(s, parse_statement());
            return s;
        }
        if (is_text("return")) {
            const NodeId s = make_node(NodeKind::ReturnStmt);
            eat(s);
            if (!is_text(";")) attach_child(s, parse_expr());
            expect(s, ";");
            return s;
        }
        if (is_text("break") || is_text("continue")) {
            const NodeId s = make_node(is_text("break") ? NodeKind::BreakStmt
                                                        : NodeKind::ContinueStmt);
            eat(s);
            expect(s, ";");
            return s;
        }
        if (is_text("switch")) {
            const NodeId s = make_node(NodeKind::SwitchStmt);
            eat(s);
            attach_node(s, parse_parenthesized_condition());
            attach_node(s, parse_statement());
            return s;
        }
        if (is_text("case") || is_text("default")) {
            const NodeId s = make_node(NodeKind::CaseStmt);
            const bool has_value = is_text("case");
            eat(s);
            if (has_value) attach_child(s, parse_cond());
            if (!is_text(":")) fail("expected ':' after case label");
            eat(s);
            return s;
        }
        if (is_text("goto")) {
            const NodeId s = make_node(NodeKind::GotoStmt);
            eat(s);
            if (!is_term(TerminalType::Identifier)) fail("expected label after goto");
            eat(s);
            expect(s, ";");
            return s;
        }
        if (is_term(TerminalType::Identifier) && peek(1) && peek(1)->text == ":") {
            const NodeId s = make_node(NodeKind::LabelStmt);
            eat(s);  // label
            eat(s);  // ':'
            attach_node(s, parse_statement());
            return s;
        }
        if (looks_like_declaration()) return parse_declaration();
        const NodeId s = make_node(NodeKind::ExprStmt);
        attach_child(s, parse_expr());
        expect(s, ";");
        return s;
    }

    NodeId parse_function_definition() {
        const NodeId fn = make_node(NodeKind::FuncDefinition);
        if (!parse_specifiers(fn)) fail("expected return type");
        while (is_text("*")) eat(fn);
        const NodeId declarator = make_node(NodeKind::FuncDeclarator);
        if (!is_term(TerminalType::Identifier)) fail("expected function name");
        eat(declarator);
        const NodeId params = make_node(NodeKind::ParamList);
        expect(params, "(");
        if (!is_text(")")) {
            parse_parameter(params);
            while (is_text(",")) {
                eat(params);
                if (is_text("...")) {
                    eat(params);
                    break;
                }
                parse_parameter(params);
            }
        }
        expect(params, ")");
        attach_node(declarator, params);
        attach_node(fn, declarator);
        attach_node(fn, parse_compound());
        return fn;
    }

    void parse_parameter(NodeId params) {
        const NodeId p = make_node(NodeKind::ParameterDeclaration);
        bool any = false;
        bool base_seen = false;
        while (!at_end()) {
            if (is_qualifier()) { eat(p); any = true; continue; }
            if (is_term(TerminalType::Type)) { eat(p); any = base_seen = true; continue; }
            if (is_struct_kw()) {
                const NodeId spec = make_node(cur().text == "struct"  ? NodeKind::StructSpecifier
                                              : cur().text == "union" ? NodeKind::UnionSpecifier
                                                                      : NodeKind::EnumSpecifier);
                eat(spec);
                if (!is_term(TerminalType::Identifier)) fail("expected tag name");
                eat(spec);
                attach_node(p, spec);
                any = base_seen = true;
                continue;
            }
            // a parameter must start with a type, so a leading identifier is a
            // typedef-style type name
            if (!base_seen && is_term(TerminalType::Identifier)) {
                eat(p);
                any = base_seen = true;
                continue;
            }
            break;
        }
        if (!any) fail("expected parameter type");
        while (is_text("*")) eat(p);
        if (is_term(TerminalType::Identifier)) eat(p);
        while (is_text("[")) {
            eat(p);
            if (!is_text("]")) attach_child(p, parse_cond());
            expect(p, "]");
        }
        attach_node(params, p);
    }
};

}  // namespace

SyntaxTree parse_source(const SourceUnit& unit) {
    if (unit.text.empty()) throw ParseError("empty unit: " + unit.id);
    Parser p(lex(unit.text));
    return p.parse_unit();
}

std::vector<Token> lex_and_annotate(const SyntaxTree& tree) {
    return tree.tokens;
}

namespace {

size_t skip_ws(const std::string& s, size_t i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) ++i;
    return i;
}

// Moves i past a string/char literal starting at i; returns position after it.
size_t skip_literal(const std::string& s, size_t i) {
    const char q = s[i++];
    while (i < s.size() && s[i] != q) {
        if (s[i] == '\\') ++i;
        ++i;
    }
    return i < s.size() ? i + 1 : i;
}

}  // namespace

std::vector<Span> extract_function_ranges(const std::string& text) {
    std::vector<Span> out;
    const size_t n = text.size();
    size_t seg_start = skip_ws(text, 0);
    int paren_depth = 0;
    bool seen_eq = false;
    size_t last_paren_close = std::string::npos;
    size_t last_nonws_before_paren = std::string::npos;

    auto reset_segment = [&](size_t from) {
        seg_start = skip_ws(text, from);
        paren_depth = 0;
        seen_eq = false;
        last_paren_close = std::string::npos;
    };

    size_t i = seg_start;
    size_t last_nonws = std::string::npos;
    while (i < n) {
        const char c = text[i];
        if (c == '"' || c == '\'') {
            i = skip_literal(text, i);
            last_nonws = i - 1;
            continue;
        }
        if (c == '(') {
            if (paren_depth == 0) last_nonws_before_paren = last_nonws;
            ++paren_depth;
        } else if (c == ')') {
            if (paren_depth > 0) --paren_depth;
            if (paren_depth == 0) last_paren_close = i;
        } else if (c == '=' && paren_depth == 0) {
            seen_eq = true;
        } else if (c == ';' && paren_depth == 0) {
            reset_segment(i + 1);
            i = seg_start;
            last_nonws = std::string::npos;
            continue;
        } else if (c == '{') {
            // match the closing brace, skipping literals
            size_t j = i;
            int depth = 0;
            while (j < n) {
                const char d = text[j];
                if (d == '"' || d == '\'') {
                    j = skip_literal(text, j);
                    continue;
                }
                if (d == '{') ++depth;
                if (d == '}' && --depth == 0) break;
                ++j;
            }
            if (j >= n) break;  // unbalanced; drop the tail
            const bool after_params =
                last_paren_close != std::string::npos &&
                skip_ws(text, last_paren_close + 1) == i;
            const bool named =
                last_nonws_before_paren != std::string::npos &&
                (std::isalnum(static_cast<unsigned char>(text[last_nonws_before_paren])) ||
                 text[last_nonws_before_paren] == '_');
            if (!seen_eq && after_params && named)
                out.push_back(Span{static_cast<uint32_t>(seg_start),
                                   static_cast<uint32_t>(j + 1)});
            reset_segment(j + 1);
            i = seg_start;
            last_nonws = std::string::npos;
            continue;
        } else if (c == '}') {
            reset_segment(i + 1);
            i = seg_start;
            last_nonws = std::string::npos;
            continue;
        }
        if (c != ' ' && c != '\t' && c != '\n') last_nonws = i;
        ++i;
    }
    return out;
}

}  // namespace cct
