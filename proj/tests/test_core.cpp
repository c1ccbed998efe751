#include "doctest.h"

#include "plstar/analysis.hpp"
#include "plstar/builtins.hpp"
#include "plstar/parser.hpp"
#include "plstar/sexpr.hpp"
#include "plstar/subst.hpp"

using namespace plstar;

namespace {

VarId iv(const std::string& name) { return data_var(name, Sort::Int); }
VarId bv(const std::string& name) { return data_var(name, Sort::Bool); }

}  // namespace

TEST_CASE("fresh_var picks the smallest unused suffix") {
    VarId x = iv("x");
    CHECK(fresh_var(x, {}).name == "x");
    CHECK(fresh_var(x, {iv("x")}).name == "x1");
    CHECK(fresh_var(x, {iv("x"), iv("x1")}).name == "x2");
    VarId q = iv("q");
    CHECK(fresh_var(q, {}).name == "q");
}

TEST_CASE("apply_subst replaces free occurrences directly") {
    // inc(q, y) with q -> a
    TermPtr p = builtin_prim("inc", {iv("q"), iv("y")});
    Substitution theta = Substitution::of({{iv("q"), iv("a")}});
    TermPtr expected = builtin_prim("inc", {iv("a"), iv("y")});
    CHECK(term_equal(apply_subst(p, theta), expected));
}

TEST_CASE("apply_subst renames a binder to avoid capture") {
    // var x; inc(x, y) with y -> x forces the binder to x1
    TermPtr body = builtin_prim("inc", {iv("x"), iv("y")});
    TermPtr p = mk_local(iv("x"), body);
    Substitution theta = Substitution::of({{iv("y"), iv("x")}});
    TermPtr got = apply_subst(p, theta);
    TermPtr expected = mk_local(iv("x1"), builtin_prim("inc", {iv("x1"), iv("x")}));
    CHECK(term_equal(got, expected));
}

TEST_CASE("apply_subst with the identity is structural identity") {
    TermPtr p = mk_seq(builtin_prim("0", {iv("t")}),
                       builtin_prim("=", {iv("n"), iv("t"), bv("w")}));
    CHECK(term_equal(apply_subst(p, Substitution{}), p));
}

TEST_CASE("substitutions preserve kinds and fix psi") {
    CHECK_THROWS_AS(Substitution::of({{iv("x"), proc_var("p", TypeSig::make({}))}}), PlError);
    VarId psi = psi_var();
    CHECK_THROWS_AS(Substitution::of({{psi, iv("x")}}), PlError);
}

TEST_CASE("instantiate splices a bound fragment") {
    TermPtr hole = mk_fragment("X", {iv("a")});
    FragmentBinding binding{{iv("a")}, builtin_prim("id", {iv("a"), iv("a")})};
    // binding vars renamed positionally onto the node's vars
    TermPtr got = instantiate(hole, {{"X", binding}});
    CHECK(term_equal(got, builtin_prim("id", {iv("a"), iv("a")})));

    CHECK_THROWS_AS(instantiate(hole, {}), PlError);
}

TEST_CASE("term s-expression round trip") {
    TermPtr p = mk_cond(bv("w"), builtin_prim("1", {iv("v")}),
                        mk_seq(builtin_prim("1", {iv("x")}),
                               builtin_prim("-", {iv("n"), iv("x"), iv("y")})));
    Sexpr sx = term_to_sexpr(p);
    SigEnv env = SigEnv::covering(p);
    auto resolve = [&](const std::string& name, const SourceSpan& span) -> VarId {
        const VarId* v = env.find(name);
        if (!v) throw PlError(Err::UndeclaredIdentifier, name, span);
        return *v;
    };
    TermPtr back = term_from_sexpr(parse_sexpr(sx.to_string()), resolve);
    CHECK(term_equal(p, back));
}

TEST_CASE("conditional with two empty branches is rejected") {
    CHECK_THROWS_AS(mk_cond(bv("w"), nullptr, nullptr), PlError);
}
