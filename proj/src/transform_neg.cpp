#include "cct/transform_neg.hpp"

#include <algorithm>
#include <fstream>

#include "cct/error.hpp"
#include "cct/parser.hpp"
#include "cct/token_diff.hpp"

#include "json.hpp"

namespace cct {

const CweMap& default_cwe_map() {
    static const CweMap map = {
        {TransformKind::DataType,
         {"CWE-190", "CWE-191", "CWE-680", "CWE-686", "CWE-704", "CWE-843"}},
        {TransformKind::Pointer, {"CWE-476", "CWE-824", "CWE-825"}},
        {TransformKind::Conditional,
         {"CWE-120", "CWE-121", "CWE-122", "CWE-124", "CWE-125", "CWE-126", "CWE-129",
          "CWE-787", "CWE-788", "CWE-823"}},
        {TransformKind::VarMisuse, {"CWE-706"}},
        {TransformKind::ValueMisuse, {"CWE-369", "CWE-456", "CWE-457", "CWE-908"}},
        {TransformKind::CallMutation,
         {"CWE-683", "CWE-685", "CWE-686", "CWE-687", "CWE-688"}},
    };
    return map;
}

CweMap load_cwe_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read CWE map: " + path);
    nlohmann::json doc;
    in >> doc;
    CweMap out;
    for (const auto& [family, ids] : doc.at("families").items()) {
        std::vector<std::string> v = ids.get<std::vector<std::string>>();
        if (v.empty()) throw ConfigError("empty CWE list for family " + family);
        out[transform_kind_from_name(family)] = std::move(v);
    }
    return out;
}

void save_cwe_map(const std::string& path, const CweMap& map) {
    nlohmann::ordered_json families;
    for (const auto& [family, ids] : map) families[transform_kind_name(family)] = ids;
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["families"] = std::move(families);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write CWE map: " + path);
    out << doc.dump(2) << "\n";
}

namespace {

// Span of a declarator/initializer child regardless of token-vs-node.
Span child_span(const SyntaxTree& t, const TreeChild& c) {
    if (c.is_token) return t.token(c.index).span;
    return t.node_span(c.index);
}

// "x = init" → the edit that erases " = init" after the declarator.
Edit drop_initializer_edit(const SyntaxTree& t, NodeId init_declarator) {
    const TreeNode& n = t.node(init_declarator);
    const Span declarator = child_span(t, n.children.front());
    const Span init = child_span(t, n.children.back());
    return Edit{Span{declarator.end, init.end}, ""};
}

std::string span_text(const SourceUnit& unit, Span s) {
    return unit.text.substr(s.begin, s.size());
}

}  // namespace

std::optional<Rewrite> misuse_data_type(const UnitAnalysis& a, Rng& rng) {
    if (!a.menu.has(TransformKind::DataType)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::DataType));
    const Token& base = a.tree.token(site.token);
    static const std::vector<std::string> kIntFamily = {"short", "int", "long"};
    static const std::vector<std::string> kFloatFamily = {"float", "double"};
    const std::vector<std::string>& family =
        (base.text == "float" || base.text == "double") ? kFloatFamily : kIntFamily;
    std::vector<std::string> options;
    for (const std::string& t : family)
        if (t != base.text) options.push_back(t);
    if (options.empty()) return std::nullopt;
    Rewrite rw;
    rw.kind = TransformKind::DataType;
    rw.edits.push_back(Edit{base.span, rng.pick(options)});
    return rw;
}

std::optional<Rewrite> misuse_pointer(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng) {
    if (!a.menu.has(TransformKind::Pointer)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::Pointer));
    Rewrite rw;
    rw.kind = TransformKind::Pointer;
    if (site.tag == 0) {
        const TreeNode& init = a.tree.node(site.node);
        const Span init_span = child_span(a.tree, init.children.back());
        const bool already_null = span_text(unit, init_span) == "NULL";
        if (!already_null && rng.chance(0.5))
            rw.edits.push_back(Edit{init_span, "NULL"});
        else
            rw.edits.push_back(drop_initializer_edit(a.tree, site.node));
    } else {
        const TreeNode& assign = a.tree.node(site.node);
        rw.edits.push_back(Edit{child_span(a.tree, assign.children.back()), "NULL"});
    }
    return rw;
}

std::optional<Rewrite> mutate_conditional(const SourceUnit& unit, const UnitAnalysis& a,
                                          Rng& rng) {
    (void)unit;
    if (!a.menu.has(TransformKind::Conditional)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::Conditional));
    Rewrite rw;
    rw.kind = TransformKind::Conditional;
    if (site.tag == 0) {
        // erase "if ( cond )" and keep the body
        const TreeNode& ifs = a.tree.node(site.node);
        NodeId body = kNoNode;
        bool past_cond = false;
        for (const TreeChild& c : ifs.children) {
            if (c.is_token) continue;
            if (!past_cond && a.tree.node(c.index).kind == NodeKind::ParenthesizedExpr) {
                past_cond = true;
                continue;
            }
            if (past_cond) {
                body = c.index;
                break;
            }
        }
        if (body == kNoNode) return std::nullopt;
        const Span if_span = a.tree.token(ifs.first_token).span;
        const Span body_span = a.tree.node_span(body);
        rw.edits.push_back(Edit{Span{if_span.begin, body_span.begin}, ""});
    } else {
        static const std::vector<std::string> kOps = {"<", ">", "<=", ">=", "==", "!="};
        const Token& op = a.tree.token(site.token);
        std::vector<std::string> options;
        for (const std::string& o : kOps)
            if (o != op.text) options.push_back(o);
        rw.edits.push_back(Edit{op.span, rng.pick(options)});
    }
    return rw;
}

std::optional<Rewrite> misuse_variable(const UnitAnalysis& a, Rng& rng) {
    if (!a.menu.has(TransformKind::VarMisuse)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::VarMisuse));
    const std::vector<int> candidates = compatible_replacements(a.scopes, site.use);
    if (candidates.empty()) return std::nullopt;
    const int replacement = rng.pick(candidates);
    const Use& u = a.scopes.uses[static_cast<size_t>(site.use)];
    Rewrite rw;
    rw.kind = TransformKind::VarMisuse;
    rw.edits.push_back(Edit{a.tree.token(u.token).span,
                            a.scopes.defs[static_cast<size_t>(replacement)].name});
    return rw;
}

std::optional<Rewrite> misuse_value(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng) {
    (void)unit;
    if (!a.menu.has(TransformKind::ValueMisuse)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::ValueMisuse));
    Rewrite rw;
    rw.kind = TransformKind::ValueMisuse;
    if (site.tag == 0) {
        rw.edits.push_back(drop_initializer_edit(a.tree, site.node));
    } else {
        const Use& u = a.scopes.uses[static_cast<size_t>(site.use)];
        const NodeId anchor = insertion_anchor(a.tree, u.stmt);
        if (anchor == kNoNode) return std::nullopt;
        const uint32_t at = a.tree.token(a.tree.node(anchor).first_token).span.begin;
        rw.edits.push_back(Edit{Span{at, at}, u.name + " = 0; "});
    }
    return rw;
}

std::optional<Rewrite> mutate_call(const SourceUnit& unit, const UnitAnalysis& a, Rng& rng) {
    if (!a.menu.has(TransformKind::CallMutation)) return std::nullopt;
    const Site& site = rng.pick(a.menu.sites(TransformKind::CallMutation));
    const std::vector<NodeId> arg_lists = a.tree.children_of_kind(site.node, NodeKind::ArgList);
    if (arg_lists.empty()) return std::nullopt;
    const TreeNode& list = a.tree.node(arg_lists.front());

    struct Arg {
        Span span;
        std::string text;
        std::string kind;  // parse kind used for swap compatibility
    };
    std::vector<Arg> args;
    for (const TreeChild& c : list.children) {
        if (c.is_token && a.tree.token(c.index).term == TerminalType::Punctuation) continue;
        Arg arg;
        arg.span = child_span(a.tree, c);
        arg.text = span_text(unit, arg.span);
        arg.kind = c.is_token ? terminal_type_label(a.tree.token(c.index).term)
                              : node_kind_label(a.tree.node(c.index).kind);
        args.push_back(std::move(arg));
    }
    if (args.empty()) return std::nullopt;

    // feasible same-parse-kind swap pairs with distinct text
    std::vector<std::pair<size_t, size_t>> swaps;
    for (size_t i = 0; i < args.size(); ++i)
        for (size_t j = i + 1; j < args.size(); ++j)
            if (args[i].kind == args[j].kind && args[i].text != args[j].text)
                swaps.emplace_back(i, j);
    std::vector<size_t> nullables;
    for (size_t i = 0; i < args.size(); ++i)
        if (args[i].text != "NULL") nullables.push_back(i);

    enum Action { Add, Remove, Swap, Null };
    std::vector<Action> actions = {Add, Remove};
    if (!swaps.empty()) actions.push_back(Swap);
    if (!nullables.empty()) actions.push_back(Null);

    Rewrite rw;
    rw.kind = TransformKind::CallMutation;
    switch (rng.pick(actions)) {
        case Add: {
            // reuse an in-scope variable, else a literal zero
            std::string added = "0";
            const int call_tok = a.tree.node(site.node).first_token;
            std::vector<std::string> visible;
            for (size_t d = 0; d < a.scopes.defs.size(); ++d) {
                const Def& def = a.scopes.defs[d];
                if (def.is_function) continue;
                if (a.scopes.visible_at(static_cast<int>(d), call_tok,
                                        a.scopes.scope_of_token(call_tok)))
                    visible.push_back(def.name);
            }
            if (!visible.empty() && rng.chance(0.75)) added = rng.pick(visible);
            const size_t pos = rng.index(args.size() + 1);
            if (pos == 0)
                rw.edits.push_back(Edit{Span{args[0].span.begin, args[0].span.begin}, added + ", "});
            else
                rw.edits.push_back(
                    Edit{Span{args[pos - 1].span.end, args[pos - 1].span.end}, ", " + added});
            break;
        }
        case Remove: {
            const size_t i = rng.index(args.size());
            if (args.size() == 1)
                rw.edits.push_back(Edit{args[0].span, ""});
            else if (i == 0)
                rw.edits.push_back(Edit{Span{args[0].span.begin, args[1].span.begin}, ""});
            else
                rw.edits.push_back(Edit{Span{args[i - 1].span.end, args[i].span.end}, ""});
            break;
        }
        case Swap: {
            const auto& [i, j] = swaps[rng.index(swaps.size())];
            rw.edits.push_back(Edit{args[i].span, args[j].text});
            rw.edits.push_back(Edit{args[j].span, args[i].text});
            break;
        }
        case Null: {
            const size_t i = nullables[rng.index(nullables.size())];
            rw.edits.push_back(Edit{args[i].span, "NULL"});
            break;
        }
    }
    return rw;
}

NegativeResult generate_negative(const SourceUnit& unit, const UnitAnalysis& analysis,
                                 Rng& rng, const NegativeOptions& options) {
    const CweMap& cwe = options.cwe_map ? *options.cwe_map : default_cwe_map();

    std::vector<TransformKind> families = analysis.menu.kinds(false);
    if (families.empty()) return NegativeResult{std::nullopt, {}, "no_negative_site"};
    rng.shuffle(families);

    std::vector<std::string> original_tokens;
    for (const Token& t : analysis.tree.tokens) original_tokens.push_back(t.text);

    for (const TransformKind family : families) {
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::optional<Rewrite> rw;
            switch (family) {
                case TransformKind::DataType: rw = misuse_data_type(analysis, rng); break;
                case TransformKind::Pointer: rw = misuse_pointer(unit, analysis, rng); break;
                case TransformKind::Conditional: rw = mutate_conditional(unit, analysis, rng); break;
                case TransformKind::VarMisuse: rw = misuse_variable(analysis, rng); break;
                case TransformKind::ValueMisuse: rw = misuse_value(unit, analysis, rng); break;
                case TransformKind::CallMutation: rw = mutate_call(unit, analysis, rng); break;
                default: break;
            }
            if (!rw) break;

            std::string text;
            try {
                text = apply_edits(unit.text, rw->edits);
            } catch (const ConfigError&) {
                continue;
            }
            if (text == unit.text) continue;

            SourceUnit candidate = unit;
            candidate.id = unit.id + "#neg";
            candidate.text = std::move(text);
            std::vector<std::string> new_tokens;
            try {
                parse_source(candidate);
                new_tokens = lex_token_texts(candidate.text);
            } catch (const ParseError&) {
                continue;
            }
            const int dist = token_edit_distance(original_tokens, new_tokens, options.edit_bound);
            if (dist < 1 || dist > options.edit_bound) continue;

            TransformedCode code;
            code.unit = std::move(candidate);
            code.provenance = {family};
            code.relation = Relation::Negative;
            return NegativeResult{std::move(code), BugTag{family, cwe.at(family)}, ""};
        }
    }
    return NegativeResult{std::nullopt, {}, "no_negative_site"};
}

}  // namespace cct
