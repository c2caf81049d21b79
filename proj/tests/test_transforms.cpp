#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "cct/error.hpp"
#include "cct/menu.hpp"
#include "cct/parser.hpp"
#include "cct/token_diff.hpp"
#include "cct/transform_neg.hpp"
#include "cct/transform_pos.hpp"
#include "support/fixture_gen.hpp"
#include "support/oracles.hpp"

using namespace cct;

namespace {

SourceUnit unit_of(const std::string& text) {
    return SourceUnit{"test", Language::C, text, "test.c"};
}

UnitAnalysis analyze(const SourceUnit& u) { return analyze_unit(u, default_library_allowlist()); }

std::string apply(const SourceUnit& u, const Rewrite& rw) {
    return apply_edits(u.text, rw.edits);
}

// use-ordinal → def-ordinal mapping; isomorphic resolution means equal maps
std::vector<int> resolution_shape(const SourceUnit& u) {
    const SyntaxTree tree = parse_source(u);
    const ScopeTable scopes = resolve_scopes(tree);
    std::vector<int> shape;
    for (const Use& use : scopes.uses) shape.push_back(use.def);
    return shape;
}

}  // namespace

TEST_CASE("abstract variable rename covers the definition and every use") {
    const SourceUnit u = unit_of("int foo(int bar){return bar;}");
    const auto a = analyze(u);
    Rng rng(1);
    const auto rw = rename_variables(a, RenameMode::Abstract, rng, {});
    REQUIRE(rw.has_value());
    CHECK(apply(u, *rw) == "int foo(int VAR_0){return VAR_0;}");
}

TEST_CASE("zero-variable function has nothing to rename") {
    const SourceUnit u = unit_of("int f(void){return g();}");
    const auto a = analyze(u);
    Rng rng(1);
    CHECK(!rename_variables(a, RenameMode::Abstract, rng, {}).has_value());
}

TEST_CASE("shadowed names get distinct fresh names and keep resolution shape") {
    const SourceUnit u = unit_of("int f(){int a=1; {int a; a=2;} return a;}");
    const auto a = analyze(u);
    Rng rng(3);
    const auto rw = rename_variables(a, RenameMode::Abstract, rng, {});
    REQUIRE(rw.has_value());
    SourceUnit renamed = u;
    renamed.text = apply(u, *rw);
    CHECK(renamed.text.find("VAR_0") != std::string::npos);
    CHECK(renamed.text.find("VAR_1") != std::string::npos);
    CHECK(resolution_shape(renamed) == resolution_shape(u));
}

TEST_CASE("rename hygiene never captures an existing identifier") {
    const SourceUnit u = unit_of("int f(int VAR_0){int x = VAR_0; return x;}");
    const auto a = analyze(u);
    Rng rng(5);
    const auto rw = rename_variables(a, RenameMode::Abstract, rng, {});
    REQUIRE(rw.has_value());
    std::set<std::string> fresh;
    for (const auto& [old_name, new_name] : rw->rename_map) {
        CHECK(fresh.insert(new_name).second);  // injective
    }
    // old VAR_0 was taken, so the map must avoid reusing it for the other var
    const SourceUnit renamed{u.id, u.language, apply(u, *rw), u.origin_path};
    CHECK(resolution_shape(renamed) == resolution_shape(u));
}

TEST_CASE("pool renaming draws corpus identifiers and skips unit names") {
    const SourceUnit u = unit_of("int f(int count){return count;}");
    const auto a = analyze(u);
    Rng rng(7);
    const auto rw =
        rename_variables(a, RenameMode::RandomPool, rng, {"count", "total", "acc"});
    REQUIRE(rw.has_value());
    const std::string out = apply(u, *rw);
    // "count" collides with the unit's own identifiers and cannot be chosen
    CHECK(out.find("int f(int count)") == std::string::npos);
    CHECK((out.find("total") != std::string::npos || out.find("acc") != std::string::npos));
}

TEST_CASE("pool renaming reports NotApplicable when the pool is too small") {
    const SourceUnit u = unit_of("int f(int a,int b){return a+b;}");
    const auto a = analyze(u);
    Rng rng(7);
    CHECK(!rename_variables(a, RenameMode::RandomPool, rng, {"a", "b"}).has_value());
}

TEST_CASE("function rename: non-library callees in first-occurrence order") {
    const SourceUnit u =
        unit_of("int f(int y){int x; x = compute(y); x = helper(x) + compute(x); return x;}");
    const auto a = analyze(u);
    Rng rng(1);
    const auto rw = rename_functions(a, default_library_allowlist(), rng);
    REQUIRE(rw.has_value());
    const std::string out = apply(u, *rw);
    CHECK(out.find("FUNC_0(y)") != std::string::npos);
    CHECK(out.find("helper") == std::string::npos);
    CHECK(out.find("FUNC_1(x)") != std::string::npos);
    CHECK(out.find("FUNC_0(x)") != std::string::npos);
    CHECK(rw->rename_map.at("compute") == "FUNC_0");
    CHECK(rw->rename_map.at("helper") == "FUNC_1");
}

TEST_CASE("library-only callees leave nothing to rename") {
    const SourceUnit u = unit_of("void f(char *d,char *s,int n){memcpy(d,s,n);}");
    const auto a = analyze(u);
    Rng rng(1);
    CHECK(!rename_functions(a, default_library_allowlist(), rng).has_value());
}

TEST_CASE("statement permutation hoists independents in a changed order") {
    const SourceUnit u = unit_of("int f(){int a=1; int b=2; use2(a,b); return a;}");
    const auto a = analyze(u);
    Rng rng(11);
    const auto rw = permute_statements(u, a, rng);
    REQUIRE(rw.has_value());
    const std::string out = apply(u, *rw);
    CHECK(out != u.text);
    // the two-element case must swap
    CHECK(out.find("int b=2;") < out.find("int a=1;"));
    // multiset of statements preserved
    SourceUnit permuted = u;
    permuted.text = out;
    const SyntaxTree before = parse_source(u);
    const SyntaxTree after = parse_source(permuted);
    auto stmt_texts = [](const SyntaxTree& t) {
        std::multiset<std::string> out_set;
        const NodeId body = t.children_of_kind(t.root, NodeKind::CompoundStmt).front();
        for (const TreeChild& c : t.node(body).children)
            if (!c.is_token) out_set.insert(t.token_text(c.index));
        return out_set;
    };
    CHECK(stmt_texts(before) == stmt_texts(after));
}

TEST_CASE("dependent declarations cannot be permuted") {
    const SourceUnit u = unit_of("int f(){int a=1; int b=a; return b;}");
    const auto a = analyze(u);
    Rng rng(2);
    CHECK(!permute_statements(u, a, rng).has_value());
}

TEST_CASE("generate_positive composes, reparses and never returns the input") {
    const auto units = testsupport::generate_fixture_units(120, 404);
    PositiveOptions opts;
    opts.max_compose = 3;
    opts.identifier_pool = {"alpha", "beta", "gamma", "delta", "omega", "kappa",
                            "sigma", "theta", "probe", "stash", "width", "depth"};
    int produced = 0;
    for (size_t i = 0; i < units.size(); ++i) {
        UnitAnalysis a;
        try {
            a = analyze_unit(units[i], default_library_allowlist());
        } catch (const ParseError&) {
            continue;
        }
        Rng rng(900 + i);
        const PositiveResult res = generate_positive(units[i], a, rng, opts);
        if (!res.code) {
            CHECK(res.skip_reason == "no_positive_site");
            continue;
        }
        ++produced;
        const TransformedCode& tc = *res.code;
        CHECK(tc.relation == Relation::Positive);
        CHECK(!tc.provenance.empty());
        CHECK(tc.provenance.size() <= 3);
        CHECK(tc.unit.text != units[i].text);
        CHECK_NOTHROW(parse_source(tc.unit));  // 100% of positives re-parse

        const bool rename_only =
            std::all_of(tc.provenance.begin(), tc.provenance.end(), [](TransformKind k) {
                return k == TransformKind::VarRename || k == TransformKind::FuncRename;
            });
        if (rename_only) {
            // alpha-equivalence: canonical renaming equalizes the token streams
            CHECK(testsupport::canonical_token_stream(units[i]) ==
                  testsupport::canonical_token_stream(tc.unit));
        } else {
            // permutation in the mix: local uses must all still resolve
            const SyntaxTree after = parse_source(tc.unit);
            const ScopeTable scopes = resolve_scopes(after);
            const SyntaxTree orig = parse_source(units[i]);
            const ScopeTable orig_scopes = resolve_scopes(orig);
            auto resolved = [](const ScopeTable& s) {
                int n = 0;
                for (const Use& u : s.uses)
                    if (u.def >= 0) ++n;
                return n;
            };
            CHECK(resolved(scopes) == resolved(orig_scopes));
        }
    }
    CHECK(produced > 100);
}

TEST_CASE("empty positive menu skips with a counted reason") {
    const SourceUnit u = unit_of("int stub(void){return 0;}");
    const auto a = analyze(u);
    Rng rng(1);
    const PositiveResult res = generate_positive(u, a, rng, PositiveOptions{});
    CHECK(!res.code);
    CHECK(res.skip_reason == "no_positive_site");
}

TEST_CASE("data type misuse swaps within the numeric family") {
    const SourceUnit u = unit_of("long f(int a,int b){long total = a * b; return total;}");
    const auto a = analyze(u);
    std::set<std::string> seen;
    for (uint64_t s = 0; s < 16; ++s) {
        Rng rng(s);
        const auto rw = misuse_data_type(a, rng);
        REQUIRE(rw.has_value());
        const std::string out = apply(u, *rw);
        CHECK_NOTHROW(parse_source(unit_of(out)));
        if (out.find("short total") != std::string::npos) seen.insert("short");
        if (out.find("int total") != std::string::npos) seen.insert("int");
        CHECK(out.find("char total") == std::string::npos);
    }
    CHECK(seen.count("short"));  // the smaller-for-larger flavor occurs
}

TEST_CASE("no numeric declaration means no data-type site") {
    const auto a = analyze(unit_of("void f(char *p){use(p);}"));
    Rng rng(1);
    CHECK(!misuse_data_type(a, rng).has_value());
}

TEST_CASE("pointer misuse drops initializers or points at NULL") {
    const SourceUnit u = unit_of("void f(char *buf){char *p = buf; use(p);}");
    const auto a = analyze(u);
    std::set<std::string> outcomes;
    for (uint64_t s = 0; s < 24; ++s) {
        Rng rng(s);
        const auto rw = misuse_pointer(u, a, rng);
        REQUIRE(rw.has_value());
        const std::string out = apply(u, *rw);
        CHECK_NOTHROW(parse_source(unit_of(out)));
        if (out.find("char *p;") != std::string::npos) outcomes.insert("dropped");
        if (out.find("char *p = NULL;") != std::string::npos) outcomes.insert("null");
    }
    CHECK(outcomes.count("dropped"));
    CHECK(outcomes.count("null"));
}

TEST_CASE("pointer-free functions have no pointer misuse") {
    const auto a = analyze(unit_of("int f(int a){return a;}"));
    Rng rng(9);
    CHECK(!misuse_pointer(unit_of("int f(int a){return a;}"), a, rng).has_value());
}

TEST_CASE("conditional change removes small guards or flips operators") {
    const SourceUnit u = unit_of("void f(int *a,int i,int n){if (i < n) a[i] = 0;}");
    const auto a = analyze(u);
    std::set<std::string> outcomes;
    for (uint64_t s = 0; s < 40; ++s) {
        Rng rng(s);
        const auto rw = mutate_conditional(u, a, rng);
        REQUIRE(rw.has_value());
        const std::string out = apply(u, *rw);
        CHECK_NOTHROW(parse_source(unit_of(out)));
        if (out.find("if") == std::string::npos) {
            outcomes.insert("guard_removed");
            CHECK(out.find("a[i] = 0;") != std::string::npos);
        } else {
            CHECK(out.find("i < n") == std::string::npos);
            outcomes.insert("operator");
        }
    }
    CHECK(outcomes.count("guard_removed"));
    CHECK(outcomes.count("operator"));
}

TEST_CASE("straight-line code offers no conditional site") {
    const SourceUnit u = unit_of("int f(int a){int b = a + 1; return b;}");
    const auto a = analyze(u);
    Rng rng(1);
    CHECK(!mutate_conditional(u, a, rng).has_value());
}

TEST_CASE("variable misuse swaps in a reachable compatible variable") {
    const SourceUnit u = unit_of("int f(int a,int b){return a;}");
    const auto a = analyze(u);
    Rng rng(4);
    const auto rw = misuse_variable(a, rng);
    REQUIRE(rw.has_value());
    const std::string out = apply(u, *rw);
    CHECK(out == "int f(int a,int b){return b;}");
}

TEST_CASE("single-variable functions cannot misuse variables") {
    const auto a = analyze(unit_of("int f(int a){return a;}"));
    Rng rng(4);
    CHECK(!misuse_variable(a, rng).has_value());
}

TEST_CASE("variable misuse respects scope reachability") {
    // the inner block's q is not visible at the return statement
    const SourceUnit u =
        unit_of("int f(int a,int b){ {int q = b; use(q);} return a;}");
    const auto a = analyze(u);
    for (uint64_t s = 0; s < 32; ++s) {
        Rng rng(s);
        const auto rw = misuse_variable(a, rng);
        REQUIRE(rw.has_value());
        SourceUnit mutated = u;
        mutated.text = apply(u, *rw);
        // replacement must still resolve: no use may become external
        const SyntaxTree tree = parse_source(mutated);
        const ScopeTable scopes = resolve_scopes(tree);
        for (const Use& use : scopes.uses)
            if (!use.is_callee) CHECK(use.def >= 0);
    }
}

TEST_CASE("value misuse drops initializers and zeroes divisors") {
    SUBCASE("initializer removal") {
        const SourceUnit u = unit_of("int f(void){int n = 10; return n;}");
        const auto a = analyze(u);
        Rng rng(0);
        bool saw_drop = false;
        for (uint64_t s = 0; s < 8 && !saw_drop; ++s) {
            Rng r(s);
            const auto rw = misuse_value(u, a, r);
            REQUIRE(rw.has_value());
            saw_drop = apply(u, *rw).find("int n;") != std::string::npos;
        }
        CHECK(saw_drop);
    }
    SUBCASE("zero assignment lands immediately before the division") {
        const SourceUnit u = unit_of("int f(int x){int d = 3; int r = 0; r = x / d; return r;}");
        const auto a = analyze(u);
        bool saw_zero = false;
        for (uint64_t s = 0; s < 16 && !saw_zero; ++s) {
            Rng r(s);
            const auto rw = misuse_value(u, a, r);
            REQUIRE(rw.has_value());
            const std::string out = apply(u, *rw);
            CHECK_NOTHROW(parse_source(unit_of(out)));
            saw_zero = out.find("d = 0; r = x / d;") != std::string::npos;
        }
        CHECK(saw_zero);
    }
    SUBCASE("nothing to do without initializers or divisions") {
        const SourceUnit u = unit_of("int f(int a){a = a + 1; return a;}");
        const auto a = analyze(u);
        Rng rng(1);
        CHECK(!misuse_value(u, a, rng).has_value());
    }
}

TEST_CASE("call mutation touches exactly one argument list") {
    const SourceUnit u = unit_of("void f(char *dst,char *src,int n){memcpy(dst, src, n);}");
    const auto a = analyze(u);
    std::set<std::string> outcomes;
    for (uint64_t s = 0; s < 60; ++s) {
        Rng rng(s);
        const auto rw = mutate_call(u, a, rng);
        REQUIRE(rw.has_value());
        const std::string out = apply(u, *rw);
        CHECK_NOTHROW(parse_source(unit_of(out)));
        if (out.find("memcpy(src, dst, n)") != std::string::npos) outcomes.insert("swap");
        if (out.find("NULL") != std::string::npos) outcomes.insert("null");
        const size_t commas = std::count(out.begin(), out.end(), ',');
        if (commas == 5) outcomes.insert("add");     // signature has two of its own
        if (commas == 3) outcomes.insert("remove");
    }
    CHECK(outcomes.count("swap"));
    CHECK(outcomes.count("null"));
    CHECK(outcomes.count("add"));
    CHECK(outcomes.count("remove"));
}

TEST_CASE("argument-less calls cannot be mutated") {
    const SourceUnit u = unit_of("void f(void){poll();}");
    const auto a = analyze(u);
    Rng rng(1);
    CHECK(!mutate_call(u, a, rng).has_value());
}

TEST_CASE("generate_negative: single family, parse-valid, close to the original") {
    const auto units = testsupport::generate_fixture_units(150, 555);
    NegativeOptions opts;
    int produced = 0;
    for (size_t i = 0; i < units.size(); ++i) {
        UnitAnalysis a;
        try {
            a = analyze_unit(units[i], default_library_allowlist());
        } catch (const ParseError&) {
            continue;
        }
        Rng rng(31337 + i);
        const NegativeResult res = generate_negative(units[i], a, rng, opts);
        if (!res.code) {
            CHECK(res.skip_reason == "no_negative_site");
            continue;
        }
        ++produced;
        CHECK(res.code->relation == Relation::Negative);
        REQUIRE(res.code->provenance.size() == 1);
        CHECK(res.code->provenance[0] == res.tag.family);
        CHECK(!res.tag.cwe_ids.empty());
        CHECK_NOTHROW(parse_source(res.code->unit));
        const int dist = testsupport::levenshtein_reference(
            lex_token_texts(units[i].text), lex_token_texts(res.code->unit.text));
        CHECK(dist >= 1);
        CHECK(dist <= opts.edit_bound);
    }
    CHECK(produced > 120);
}

TEST_CASE("generate_negative is deterministic per (unit, seed)") {
    const auto units = testsupport::generate_fixture_units(20, 808);
    for (size_t i = 0; i < units.size(); ++i) {
        const auto a = analyze_unit(units[i], default_library_allowlist());
        Rng r1(42), r2(42);
        const NegativeResult one = generate_negative(units[i], a, r1, {});
        const NegativeResult two = generate_negative(units[i], a, r2, {});
        REQUIRE(one.code.has_value() == two.code.has_value());
        if (one.code) {
            CHECK(one.code->unit.text == two.code->unit.text);
            CHECK(one.tag.family == two.tag.family);
        }
    }
}

TEST_CASE("empty negative menu skips with a counted reason") {
    const SourceUnit u = unit_of("int stub(void){return 0;}");
    const auto a = analyze(u);
    Rng rng(1);
    const NegativeResult res = generate_negative(u, a, rng, {});
    CHECK(!res.code);
    CHECK(res.skip_reason == "no_negative_site");
}

TEST_CASE("family to CWE mapping matches the reference table exhaustively") {
    const CweMap& map = default_cwe_map();
    REQUIRE(map.size() == 6);
    const std::map<TransformKind, std::vector<std::string>> expected = {
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
    for (const auto& [family, ids] : expected) {
        REQUIRE(map.count(family));
        CHECK(map.at(family) == ids);
        CHECK(!map.at(family).empty());
    }

    SUBCASE("data file round-trips the builtin table") {
        save_cwe_map("cwe_roundtrip.json", map);
        CHECK(load_cwe_map("cwe_roundtrip.json") == map);
    }
}

TEST_CASE("banded token distance agrees with the reference implementation") {
    Rng rng(2024);
    const std::vector<std::string> alphabet = {"a", "b", "c", "x", "(", ")", ";"};
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::string> a, b;
        const size_t n = rng.below(30);
        for (size_t i = 0; i < n; ++i) a.push_back(alphabet[rng.index(alphabet.size())]);
        b = a;
        const size_t edits = rng.below(6);
        for (size_t e = 0; e < edits && !b.empty(); ++e) {
            const size_t at = rng.index(b.size());
            switch (rng.below(3)) {
                case 0: b[at] = alphabet[rng.index(alphabet.size())]; break;
                case 1: b.erase(b.begin() + static_cast<long>(at)); break;
                default: b.insert(b.begin() + static_cast<long>(at), alphabet[rng.index(alphabet.size())]);
            }
        }
        const int ref = testsupport::levenshtein_reference(a, b);
        const int banded = token_edit_distance(a, b, 8);
        if (ref <= 8) CHECK(banded == ref);
        else CHECK(banded == 9);
    }
}
