#include "doctest.h"

#include "plstar/analysis.hpp"
#include "plstar/builtins.hpp"
#include "plstar/parser.hpp"
#include "support/corpus.hpp"

using namespace plstar;
using namespace plstar::testing;

TEST_CASE("factorial parses to the expected shape") {
    CorpusProgram fact = load_corpus("factorial");
    const auto* def = fact.term->as<ProcDef>();
    REQUIRE(def != nullptr);
    CHECK(def->name.name == "f");
    CHECK(def->formals.size() == 2);
    // body: var t,w,x,y,z; nested locals
    const Term* body = def->body.get();
    int locals = 0;
    while (const auto* l = body->as<Local>()) {
        ++locals;
        body = l->body.get();
    }
    CHECK(locals == 5);
    // builtins become Prim nodes, the recursive call a ProcCall
    const auto* seq = body->as<Seq>();
    REQUIRE(seq != nullptr);
    CHECK(seq->first->is<Prim>());
}

TEST_CASE("corpus programs round trip through print and parse") {
    for (const char* stem : {"factorial", "update", "quicksort"}) {
        CAPTURE(stem);
        CorpusProgram p = load_corpus(stem);
        std::string printed = print_program(p.term);
        TermPtr reparsed = parse_program(printed, p.sigs, "printed.pl");
        CHECK(term_equal(p.term, reparsed));
        // canonical formatting is a fixed point, and the corpus is canonical
        CHECK(print_program(reparsed) == printed);
        CHECK(printed == p.text);
    }
}

TEST_CASE("parse errors carry spans inside the input") {
    SigEnv sigs;
    sigs.declare("w", "data bool");
    std::string text = "if w then call 1(v) fi";
    try {
        parse_program(text, sigs, "bad.pl");
        FAIL("expected an error");
    } catch (const PlError& e) {
        CHECK(e.code() == Err::UndeclaredIdentifier);
        CHECK(e.span().start < text.size());
        CHECK(e.span().line >= 1);
    }
}

TEST_CASE("data name used as callee is a kind error") {
    SigEnv sigs;
    sigs.declare("x", "data int");
    try {
        parse_program("call x()", sigs, "bad.pl");
        FAIL("expected an error");
    } catch (const PlError& e) {
        CHECK(e.code() == Err::KindError);
    }
}

TEST_CASE("a conditional with two empty branches is rejected") {
    SigEnv sigs;
    sigs.declare("w", "data bool");
    CHECK_THROWS_AS(parse_program("if w then else fi", sigs, "bad.pl"), PlError);
    CHECK_THROWS_AS(parse_program("if w then fi", sigs, "bad.pl"), PlError);
}

TEST_CASE("empty branches parse on one side") {
    SigEnv sigs;
    sigs.declare("w", "data bool");
    sigs.declare("v", "data int");
    TermPtr t1 = parse_program("if w then call 1(v) fi", sigs, "ok.pl");
    const auto* c1 = t1->as<Cond>();
    REQUIRE(c1 != nullptr);
    CHECK(c1->then_branch != nullptr);
    CHECK(c1->else_branch == nullptr);

    TermPtr t2 = parse_program("if w then else call 1(v) fi", sigs, "ok.pl");
    const auto* c2 = t2->as<Cond>();
    REQUIRE(c2 != nullptr);
    CHECK(c2->then_branch == nullptr);
    CHECK(c2->else_branch != nullptr);
}

TEST_CASE("fix parses and prints, also in substitution form") {
    SigEnv sigs;
    sigs.declare("g", "proc(in int, out int)");
    sigs.declare("a", "data int");
    sigs.declare("b", "data int");
    std::string text =
        "fix h as g in\n"
        "  proc g(a, b);\n"
        "    call h(a, b)\n"
        "  end g\n"
        "end\n";
    TermPtr t = parse_program(text, sigs, "fix.pl");
    const auto* fx = t->as<Fix>();
    REQUIRE(fx != nullptr);
    CHECK(fx->used.name == "h");
    CHECK(fx->defined.name == "g");
    CHECK(print_program(t) == text);

    PrintOptions mu;
    mu.mu_as_subst = true;
    // the used name replaced by the defined one: the recursive definition
    std::string subst = print_program(t, mu);
    CHECK(subst ==
          "proc g(a, b);\n"
          "  call g(a, b)\n"
          "end g\n");
}

TEST_CASE("print of a builtin prim uses call syntax") {
    TermPtr p = builtin_prim("0", {data_var("t", Sort::Int)});
    CHECK(print_program(p) == "call 0(t)\n");
}

TEST_CASE("print then parse preserves prim versus proc call distinction") {
    CorpusProgram qs = load_corpus("quicksort");
    std::string printed = print_program(qs.term);
    TermPtr again = parse_program(printed, qs.sigs, "qs.pl");
    CHECK(term_equal(qs.term, again));
}

TEST_CASE("signature environment parses nested procedure specs") {
    VarId apply = SigEnv::parse_decl("apply", "proc(in proc(in int, out int), in int, out int)");
    CHECK(apply.is_proc);
    REQUIRE(apply.sig->arity() == 3);
    CHECK(apply.sig->args[0].is_proc);
    CHECK(apply.sig->args[0].proc_sig->arity() == 2);
}
