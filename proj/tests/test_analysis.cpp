#include "doctest.h"

#include "plstar/analysis.hpp"
#include "plstar/interp.hpp"
#include "support/corpus.hpp"
#include "support/gen.hpp"

using namespace plstar;
using namespace plstar::testing;

namespace {

VarId iv(const std::string& name) { return data_var(name, Sort::Int); }

bool has_code(const std::vector<Diagnostic>& diags, DiagCode code) {
    for (const auto& d : diags) {
        if (d.code == code) return true;
    }
    return false;
}

VarSet minus(VarSet a, const VarSet& b) {
    for (const auto& v : b) a.erase(v);
    return a;
}

VarSet unite(VarSet a, const VarSet& b) {
    a.insert(b.begin(), b.end());
    return a;
}

// The in/out equations, asserted at every node of a term.
void check_axiom_node(const TermPtr& term) {
    if (!term) return;
    VarSets vs = var_sets(term);
    if (const auto* s = term->as<Seq>()) {
        VarSets a = var_sets(s->first);
        VarSets b = var_sets(s->second);
        CHECK(vs.outputs == unite(a.outputs, b.outputs));
        CHECK(vs.inputs == minus(unite(a.inputs, b.inputs), vs.outputs));
        check_axiom_node(s->first);
        check_axiom_node(s->second);
    } else if (const auto* c = term->as<Cond>()) {
        VarSets a = var_sets(c->then_branch);
        VarSets b = var_sets(c->else_branch);
        CHECK(vs.outputs == unite(a.outputs, b.outputs));
        VarSet ins = unite(a.inputs, b.inputs);
        ins.insert(c->scrutinee);
        CHECK(vs.inputs == minus(ins, vs.outputs));
        check_axiom_node(c->then_branch);
        check_axiom_node(c->else_branch);
    } else if (const auto* l = term->as<Local>()) {
        VarSets body = var_sets(l->body);
        CHECK(vs.outputs == minus(body.outputs, {l->var}));
        // generated locals are written before read, so the paper form holds
        CHECK(vs.inputs == body.inputs);
        CHECK(vs.free() == minus(body.free(), {l->var}));
        check_axiom_node(l->body);
    } else if (const auto* d = term->as<ProcDef>()) {
        VarSets body = var_sets(d->body);
        VarSet formals(d->formals.begin(), d->formals.end());
        VarSet out = unite(minus(body.outputs, formals), {d->name});
        CHECK(vs.outputs == out);
        VarSet in = minus(body.inputs, formals);
        in.erase(d->name);
        CHECK(vs.inputs == in);
        check_axiom_node(d->body);
    } else if (const auto* k = term->as<ProcCall>()) {
        VarSet call_in = {k->callee};
        VarSet call_out;
        for (std::size_t i = 0; i < k->actuals.size(); ++i) {
            if (argio_in(k->callee.sig->args[i].io)) call_in.insert(k->actuals[i]);
            if (argio_out(k->callee.sig->args[i].io)) call_out.insert(k->actuals[i]);
        }
        VarSets p = var_sets(k->prefix);
        CHECK(vs.outputs == unite(p.outputs, call_out));
        CHECK(vs.inputs == minus(unite(p.inputs, call_in), vs.outputs));
        check_axiom_node(k->prefix);
    } else if (const auto* x = term->as<Fix>()) {
        VarSets body = var_sets(x->body);
        CHECK(vs.outputs == body.outputs);
        CHECK(vs.inputs == minus(body.inputs, {x->used}));
        CHECK(vs.free() == unite(minus(body.free(), {x->used}), {x->defined}));
        check_axiom_node(x->body);
    }
}

}  // namespace

TEST_CASE("factorial variable sets match the hand-derived fixture") {
    CorpusProgram fact = load_corpus("factorial");
    VarSets vs = var_sets(fact.term);
    VarSet expected_out = {*fact.sigs.find("f")};
    CHECK(vs.outputs == expected_out);
    std::set<std::string> input_names;
    for (const auto& v : vs.inputs) input_names.insert(v.name);
    CHECK(input_names == std::set<std::string>{"0", "=", "1", "-", "*"});
}

TEST_CASE("quicksort variable sets") {
    CorpusProgram qs = load_corpus("quicksort");
    VarSets vs = var_sets(qs.term);
    std::set<std::string> input_names;
    for (const auto& v : vs.inputs) input_names.insert(v.name);
    CHECK(input_names == std::set<std::string>{"lt", "Partition", "inc"});
    CHECK(vs.outputs.size() == 1);
    CHECK(vs.outputs.begin()->name == "Quicksort");
}

TEST_CASE("in/out axioms hold on random terms") {
    TermGen gen(20260810);
    for (int i = 0; i < 200; ++i) {
        auto generated = gen.generate();
        check_axiom_node(generated.term);
    }
}

TEST_CASE("substitution axioms hold for output-injective substitutions") {
    TermGen gen(424241);
    int checked = 0;
    for (int i = 0; i < 400 && checked < 200; ++i) {
        auto generated = gen.generate();
        Substitution theta = gen.random_subst(generated.term);
        auto diags = check_subst(generated.term, theta);
        if (has_code(diags, DiagCode::NotOutputInjective)) continue;
        VarSets before = var_sets(generated.term);
        VarSets after = var_sets(apply_subst(generated.term, theta));
        CHECK(after.outputs == theta.image(before.outputs));
        CHECK(after.inputs == minus(theta.image(before.inputs), after.outputs));
        CHECK(after.procs == theta.image(before.procs));
        CHECK(after.data == theta.image(before.data));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("type_of answers the factorial argument queries") {
    CorpusProgram fact = load_corpus("factorial");
    VarId f = *fact.sigs.find("f");
    CHECK(type_of(f, fact.term, {1}) == TypeFlags{true, false, true, false});
    CHECK(type_of(f, fact.term, {2}) == TypeFlags{false, true, true, false});
    CHECK(type_of(f, fact.term, {}) == TypeFlags{false, true, false, true});
}

TEST_CASE("type_of reports quicksort's array argument as both input and output") {
    CorpusProgram qs = load_corpus("quicksort");
    VarId q = *qs.sigs.find("Quicksort");
    CHECK(type_of(q, qs.term, {1}) == TypeFlags{true, true, true, false});
    CHECK(type_of(q, qs.term, {2}) == TypeFlags{true, false, true, false});
    CHECK(type_of(q, qs.term, {3}) == TypeFlags{true, false, true, false});
}

TEST_CASE("type_of is stable under renaming") {
    CorpusProgram qs = load_corpus("quicksort");
    VarId q = *qs.sigs.find("Quicksort");
    VarId r = proc_var("R", q.sig);
    TermPtr renamed = apply_subst(qs.term, Substitution::of({{q, r}}));
    CHECK(type_of(r, renamed, {1}) == type_of(q, qs.term, {1}));
    CHECK(type_of(r, renamed, {}) == type_of(q, qs.term, {}));
}

TEST_CASE("check_preconditions accepts the corpus programs") {
    for (const char* stem : {"factorial", "update", "quicksort"}) {
        CAPTURE(stem);
        CorpusProgram p = load_corpus(stem);
        CHECK(check_preconditions(p.term).empty());
        CHECK(check_sig_agreement(p.term).empty());
    }
}

TEST_CASE("defining a procedure twice is rejected") {
    TypeSigPtr sig =
        TypeSig::make({data_arg(ArgIo::In, Sort::Int), data_arg(ArgIo::Out, Sort::Int)});
    VarId p = proc_var("p", sig);
    TermPtr body = builtin_prim("id", {iv("a"), iv("b")});
    TermPtr def1 = mk_procdef(p, {iv("a"), iv("b")}, body);
    TermPtr def2 = mk_procdef(p, {iv("a"), iv("b")}, body);
    auto diags = check_preconditions(mk_seq(def1, def2));
    CHECK(has_code(diags, DiagCode::ProcRedefined));
}

TEST_CASE("side-effecting composition requires equal data sets") {
    ensure_test_builtins();
    TermPtr left = builtin_prim("touch", {iv("x")});
    TermPtr right = builtin_prim("touch", {iv("y")});
    auto diags = check_preconditions(mk_seq(left, right));
    CHECK(has_code(diags, DiagCode::DataSetMismatch));

    // padding both sides restores the composition
    TermPtr padded = mk_seq(pad_variables(left, {iv("y")}), pad_variables(right, {iv("x")}));
    CHECK(check_preconditions(padded).empty());

    // effect-free fragments compose without padding
    TermPtr pure = mk_seq(builtin_prim("inc", {iv("x"), iv("x")}),
                          builtin_prim("inc", {iv("y"), iv("y")}));
    CHECK(!has_code(check_preconditions(pure), DiagCode::DataSetMismatch));
}

TEST_CASE("procedures may not define outer variables") {
    TypeSigPtr sig = TypeSig::make({data_arg(ArgIo::In, Sort::Int)});
    VarId p = proc_var("p", sig);
    // body writes z, which is not a formal
    TermPtr body = builtin_prim("inc", {iv("a"), iv("z")});
    TermPtr def = mk_procdef(p, {iv("a")}, body);
    auto diags = check_preconditions(def);
    CHECK(has_code(diags, DiagCode::FormalIsOuterOutput));
}

TEST_CASE("procedure bodies with declared side effects are rejected") {
    ensure_test_builtins();
    TypeSigPtr sig = TypeSig::make({data_arg(ArgIo::InOut, Sort::Int)});
    VarId p = proc_var("p", sig);
    TermPtr def = mk_procdef(p, {iv("a")}, builtin_prim("touch", {iv("a")}));
    auto diags = check_preconditions(def);
    CHECK(has_code(diags, DiagCode::SideEffectOnCapturedVar));
}

TEST_CASE("reading a data variable before defining it is reported") {
    SigEnv sigs;
    sigs.declare("t", "data int");
    sigs.declare("u", "data int");
    TermPtr t = parse_program("var t;\ncall inc(t, u)", sigs, "bad.pl");
    auto diags = check_preconditions(t);
    CHECK(has_code(diags, DiagCode::DataUseBeforeDef));
}

TEST_CASE("fix preconditions check variable roles") {
    TypeSigPtr sig =
        TypeSig::make({data_arg(ArgIo::In, Sort::Int), data_arg(ArgIo::Out, Sort::Int)});
    VarId u = proc_var("u", sig);
    VarId p = proc_var("p", sig);
    // body never calls u: u is not an input of the body
    TermPtr body = mk_procdef(p, {iv("a"), iv("b")}, builtin_prim("id", {iv("a"), iv("b")}));
    auto diags = check_preconditions(mk_fix(u, p, body));
    CHECK(has_code(diags, DiagCode::FixVarKind));
}

TEST_CASE("check_subst catches the paper's counterexample substitutions") {
    // P(x,y,u,v) = y := x+1; v := u+1 with u -> y identifies data variables
    TermPtr p = mk_seq(builtin_prim("inc", {iv("x"), iv("y")}),
                       builtin_prim("inc", {iv("u"), iv("v")}));
    auto diags = check_subst(p, Substitution::of({{iv("u"), iv("y")}}));
    CHECK(has_code(diags, DiagCode::DataIdentified));

    // [x,y] x := x+1 with y -> x
    TermPtr q = pad_variables(builtin_prim("inc", {iv("x"), iv("x")}), {iv("y")});
    auto diags2 = check_subst(q, Substitution::of({{iv("y"), iv("x")}}));
    CHECK(has_code(diags2, DiagCode::DataIdentified));
}

TEST_CASE("check_subst accepts identifying procedure variables") {
    // P(f,g,h,k) defines f from g, h, k; k -> f forms a recursive definition
    TypeSigPtr unary =
        TypeSig::make({data_arg(ArgIo::In, Sort::Int), data_arg(ArgIo::Out, Sort::Int)});
    VarId f = proc_var("f", unary);
    VarId g = proc_var("g", unary);
    VarId h = proc_var("h", unary);
    VarId k = proc_var("k", unary);
    TermPtr body = mk_seq(
        mk_proccall(g, {iv("a"), iv("t")}),
        mk_seq(mk_proccall(h, {iv("t"), iv("s")}), mk_proccall(k, {iv("s"), iv("b")})));
    TermPtr def = mk_procdef(f, {iv("a"), iv("b")}, body);
    CHECK(check_subst(def, Substitution::of({{k, f}})).empty());
}

TEST_CASE("check_subst rejects kind violations and moved psi") {
    TermPtr p = builtin_prim("inc", {iv("x"), iv("y")});
    Substitution bad = Substitution::raw({{iv("x"), proc_var("q", TypeSig::make({}))}});
    CHECK(has_code(check_subst(p, bad), DiagCode::KindMismatch));
    Substitution psi_move = Substitution::raw({{psi_var(), iv("x")}});
    CHECK(has_code(check_subst(p, psi_move), DiagCode::PsiViolation));
}

TEST_CASE("padding is validated and monotone for shared outputs") {
    TermPtr p = builtin_prim("inc", {iv("x"), iv("y")});
    CHECK(term_equal(pad_variables(p, {}), p));
    CHECK_THROWS_AS(pad_variables(p, {iv("x")}), PlError);

    TermGen gen(77);
    for (int i = 0; i < 50; ++i) {
        auto generated = gen.generate();
        auto before = check_preconditions(generated.term);
        TermPtr padded = pad_variables(generated.term, {iv("fresh_pad")});
        auto after = check_preconditions(padded);
        int shared_before = 0;
        int shared_after = 0;
        for (const auto& d : before) shared_before += d.code == DiagCode::SharedProcOutput;
        for (const auto& d : after) shared_after += d.code == DiagCode::SharedProcOutput;
        CHECK(shared_after == shared_before);
    }
}

TEST_CASE("generated terms pass the preconditions") {
    TermGen gen(11111);
    for (int i = 0; i < 100; ++i) {
        auto generated = gen.generate();
        auto diags = check_preconditions(generated.term);
        if (!diags.empty()) {
            CAPTURE(term_brief(generated.term));
            CAPTURE(diags.front().message);
            CHECK(diags.empty());
        }
    }
}

TEST_CASE("definitional independence on the finite domain") {
    // every semantics of P theta, pulled back along theta, is one of P
    TermGen gen(987651);
    Domain domain;
    domain.int_lo = 0;
    domain.int_hi = 1;
    Fuel fuel;
    fuel.max_unfoldings = 24;
    int checked = 0;
    for (int i = 0; i < 200 && checked < 60; ++i) {
        auto generated = gen.generate();
        Substitution theta = gen.random_subst(generated.term);
        if (!check_subst(generated.term, theta).empty()) continue;
        SemSet base = semantics_set(generated.term, Env{}, domain, fuel);
        TermPtr instance = apply_subst(generated.term, theta);
        SemSet inst = semantics_set(instance, Env{}, domain, fuel);
        VarSet base_vars;
        for (const auto& v : free_vars(generated.term)) {
            if (!v.is_proc) base_vars.insert(v);
        }
        for (const auto& env : inst.envs) {
            Env pulled;
            pulled.psi = env.psi;
            for (const auto& v : base_vars) {
                pulled.data[v] = env.data.at(theta(v));
            }
            bool member = false;
            for (const auto& candidate : base.envs) {
                bool same = candidate.psi == pulled.psi;
                for (const auto& [var, sem] : pulled.data) {
                    same &= candidate.data.count(var) && candidate.data.at(var) == sem;
                }
                member |= same;
            }
            CHECK(member);
        }
        ++checked;
    }
    CHECK(checked == 60);
}
