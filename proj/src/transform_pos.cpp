#include "cct/transform_pos.hpp"

#include <algorithm>

#include "cct/error.hpp"
#include "cct/parser.hpp"

namespace cct {

std::set<std::string> unit_identifiers(const SyntaxTree& tree) {
    std::set<std::string> out;
    for (const Token& t : tree.tokens)
        if (t.term == TerminalType::Identifier) out.insert(t.text);
    return out;
}

namespace {

std::string fresh_numbered_name(const std::string& prefix, int& counter,
                                std::set<std::string>& forbidden) {
    while (true) {
        std::string name = prefix + std::to_string(counter++);
        if (forbidden.insert(name).second) return name;
    }
}

}  // namespace

std::optional<Rewrite> rename_variables(const UnitAnalysis& a, RenameMode mode, Rng& rng,
                                        const std::vector<std::string>& identifier_pool) {
    std::vector<int> targets;
    for (size_t d = 0; d < a.scopes.defs.size(); ++d)
        if (!a.scopes.defs[d].is_function) targets.push_back(static_cast<int>(d));
    if (targets.empty()) return std::nullopt;

    std::set<std::string> forbidden = unit_identifiers(a.tree);

    std::vector<std::string> new_names;
    if (mode == RenameMode::RandomPool) {
        std::vector<std::string> pool;
        for (const std::string& name : identifier_pool)
            if (!forbidden.count(name)) pool.push_back(name);
        if (pool.size() < targets.size()) return std::nullopt;
        rng.shuffle(pool);
        new_names.assign(pool.begin(), pool.begin() + static_cast<long>(targets.size()));
        for (const std::string& n : new_names) forbidden.insert(n);
    } else {
        int counter = 0;
        for (size_t i = 0; i < targets.size(); ++i)
            new_names.push_back(fresh_numbered_name("VAR_", counter, forbidden));
    }

    Rewrite rw;
    rw.kind = TransformKind::VarRename;
    for (size_t i = 0; i < targets.size(); ++i) {
        const Def& def = a.scopes.defs[static_cast<size_t>(targets[i])];
        rw.rename_map[def.name] = new_names[i];
        rw.edits.push_back(Edit{a.tree.token(def.name_token).span, new_names[i]});
        for (const int u : a.scopes.uses_of_def(targets[i]))
            rw.edits.push_back(Edit{a.tree.token(a.scopes.uses[static_cast<size_t>(u)].token).span,
                                    new_names[i]});
    }
    return rw;
}

std::optional<Rewrite> rename_functions(const UnitAnalysis& a,
                                        const std::set<std::string>& library_allowlist,
                                        Rng& rng) {
    (void)rng;  // abstract FUNC_i naming is deterministic by occurrence order
    const auto callees = renameable_callees(a.tree, a.scopes, library_allowlist);
    if (callees.empty()) return std::nullopt;

    std::set<std::string> forbidden = unit_identifiers(a.tree);
    Rewrite rw;
    rw.kind = TransformKind::FuncRename;
    int counter = 0;
    for (const auto& [name, first_use] : callees) {
        (void)first_use;
        const std::string fresh = fresh_numbered_name("FUNC_", counter, forbidden);
        rw.rename_map[name] = fresh;
    }
    for (const Use& u : a.scopes.uses) {
        if (!u.is_callee) continue;
        const auto it = rw.rename_map.find(u.name);
        if (it == rw.rename_map.end()) continue;
        if (u.def >= 0 && !a.scopes.defs[static_cast<size_t>(u.def)].is_function) continue;
        rw.edits.push_back(Edit{a.tree.token(u.token).span, it->second});
    }
    // a recursive call renames the definition too, keeping the unit coherent
    for (const Def& def : a.scopes.defs) {
        if (!def.is_function) continue;
        const auto it = rw.rename_map.find(def.name);
        if (it != rw.rename_map.end())
            rw.edits.push_back(Edit{a.tree.token(def.name_token).span, it->second});
    }
    return rw;
}

std::optional<Rewrite> permute_statements(const SourceUnit& unit, const UnitAnalysis& a,
                                          Rng& rng) {
    const std::vector<NodeId>& indep = a.independent_decls;
    if (indep.size() < 2) return std::nullopt;

    std::vector<size_t> order(indep.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int attempt = 0; attempt < 32; ++attempt) {
        rng.shuffle(order);
        if (!std::is_sorted(order.begin(), order.end())) break;
    }
    if (std::is_sorted(order.begin(), order.end())) std::swap(order[0], order[1]);

    const TreeNode& fn = a.tree.node(a.tree.root);
    NodeId body = kNoNode;
    for (const TreeChild& c : fn.children)
        if (!c.is_token && a.tree.node(c.index).kind == NodeKind::CompoundStmt) body = c.index;
    if (body == kNoNode) return std::nullopt;

    const std::set<NodeId> moved(indep.begin(), indep.end());
    std::vector<std::string> lines;
    for (const size_t idx : order) {
        const Span s = a.tree.node_span(indep[idx]);
        lines.push_back(unit.text.substr(s.begin, s.size()));
    }
    for (const TreeChild& c : a.tree.node(body).children) {
        if (c.is_token) continue;
        if (moved.count(c.index)) continue;
        const Span s = a.tree.node_span(c.index);
        lines.push_back(unit.text.substr(s.begin, s.size()));
    }

    // rebuild the body between the braces
    const TreeNode& b = a.tree.node(body);
    const Span open = a.tree.token(b.first_token).span;
    const Span close = a.tree.token(b.last_token).span;
    std::string inner = "\n";
    for (const std::string& line : lines) inner += "    " + line + "\n";

    Rewrite rw;
    rw.kind = TransformKind::StmtPermute;
    rw.edits.push_back(Edit{Span{open.end, close.begin}, inner});
    return rw;
}

PositiveResult generate_positive(const SourceUnit& unit, const UnitAnalysis& analysis,
                                 Rng& rng, const PositiveOptions& options) {
    const std::set<std::string>& allowlist =
        options.library_allowlist ? *options.library_allowlist : default_library_allowlist();

    std::vector<TransformKind> kinds = analysis.menu.kinds(true);
    if (kinds.empty()) return PositiveResult{std::nullopt, "no_positive_site"};

    const size_t budget = std::min<size_t>(static_cast<size_t>(std::max(1, options.max_compose)),
                                           kinds.size());
    rng.shuffle(kinds);
    const size_t count = 1 + rng.index(budget);

    SourceUnit current = unit;
    const UnitAnalysis* a = &analysis;
    UnitAnalysis scratch;
    std::vector<TransformKind> provenance;

    for (size_t i = 0; i < kinds.size() && provenance.size() < count; ++i) {
        std::optional<Rewrite> rw;
        switch (kinds[i]) {
            case TransformKind::VarRename: {
                const bool pool_mode = !options.identifier_pool.empty() && rng.chance(0.5);
                rw = rename_variables(*a, pool_mode ? RenameMode::RandomPool : RenameMode::Abstract,
                                      rng, options.identifier_pool);
                if (!rw && pool_mode)
                    rw = rename_variables(*a, RenameMode::Abstract, rng, {});
                break;
            }
            case TransformKind::FuncRename:
                rw = rename_functions(*a, allowlist, rng);
                break;
            case TransformKind::StmtPermute:
                rw = permute_statements(current, *a, rng);
                break;
            default:
                continue;
        }
        if (!rw) continue;
        SourceUnit next = current;
        next.text = apply_edits(current.text, rw->edits);
        try {
            scratch = analyze_unit(next, allowlist);
        } catch (const ParseError&) {
            continue;  // drop this step, keep what we have
        }
        current = std::move(next);
        a = &scratch;
        provenance.push_back(kinds[i]);
    }

    if (provenance.empty()) return PositiveResult{std::nullopt, "no_positive_site"};
    if (current.text == unit.text) return PositiveResult{std::nullopt, "no_positive_site"};

    TransformedCode out;
    current.id = unit.id + "#pos";
    out.unit = std::move(current);
    out.provenance = std::move(provenance);
    out.relation = Relation::Positive;
    return PositiveResult{std::move(out), ""};
}

}  // namespace cct
