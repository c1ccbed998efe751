#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plstar/interp.hpp"
#include "plstar/sexpr.hpp"

namespace plstar {

// Relations on semantics of program variables, written over the variable
// names of the term under judgment (the paper's R_f convention). Composite
// expressions are built from named library atoms.

struct RelExpr;
using RelExprPtr = std::shared_ptr<const RelExpr>;

// Integer parameter: a constant or a bound integer variable plus offset.
struct IntParam {
    std::string var;  // empty = constant
    long offset = 0;
};

struct RelExpr {
    enum class Kind {
        True,
        Atom,      // library predicate over named variables
        Ref,       // named definition applied to variables / int params
        And,
        Or,
        Not,
        Implies,   // children[0] -> children[1]
        Exists,    // exists a data semantics for bound_var
        ProcLift,  // forall v (q(v) -> body), v bound to lift_vars
        ForallK,   // bounded integer quantifier
    };

    Kind kind = Kind::True;
    std::string name;                    // Atom/Ref name; ProcLift proc var; Exists/ForallK var
    std::vector<std::string> arg_vars;   // Atom/Ref variable arguments; ProcLift tuple names
    std::vector<IntParam> int_args;      // Atom/Ref integer parameters
    std::vector<RelExprPtr> children;
    Sort bound_sort = Sort::Int;         // Exists
    long k_lo = 0, k_hi = 0;             // ForallK
};

RelExprPtr rel_true();
RelExprPtr rel_atom(std::string name, std::vector<std::string> vars,
                    std::vector<IntParam> int_args = {});
RelExprPtr rel_ref(std::string name, std::vector<std::string> vars,
                   std::vector<IntParam> int_args = {});
RelExprPtr rel_and(std::vector<RelExprPtr> children);
RelExprPtr rel_or(std::vector<RelExprPtr> children);
RelExprPtr rel_not(RelExprPtr child);
RelExprPtr rel_implies(RelExprPtr lhs, RelExprPtr rhs);
RelExprPtr rel_exists(std::string var, Sort sort, RelExprPtr body);
RelExprPtr rel_proclift(std::string proc, std::vector<std::string> tuple, RelExprPtr body);
RelExprPtr rel_forallk(std::string var, long lo, long hi, RelExprPtr body);

bool rel_equal(const RelExprPtr& a, const RelExprPtr& b);

// Variable-name renaming (non-injective maps allowed: this is how the
// substitution rule transports a relation).
RelExprPtr rel_rename(const RelExprPtr& rel, const std::map<std::string, std::string>& names);

std::string rel_to_string(const RelExprPtr& rel);
Sexpr rel_to_sexpr(const RelExprPtr& rel);
RelExprPtr rel_from_sexpr(const Sexpr& sx);

// One library atom: a predicate over data and procedure semantics plus
// integer parameters.
struct AtomArgs {
    std::vector<DataSem> data;
    std::vector<ProcSem> procs;
    std::vector<long> ints;
};

using AtomFn = std::function<bool(const AtomArgs&)>;

struct RelParamKinds {
    std::vector<bool> arg_is_proc;  // per variable argument
    std::size_t int_arity = 0;
};

class RelLibrary {
public:
    void define_atom(std::string name, RelParamKinds kinds, AtomFn fn);
    // A named definition: formal variable names bound positionally, integer
    // formals likewise; the body refers to the formals.
    void define(std::string name, std::vector<std::string> formals,
                std::vector<std::string> int_formals, RelExprPtr body);

    bool has(const std::string& name) const;
    const RelExprPtr* find_def(const std::string& name) const;

    struct Def {
        std::vector<std::string> formals;
        std::vector<std::string> int_formals;
        RelExprPtr body;
    };
    const Def* find_def_full(const std::string& name) const;
    struct AtomDef {
        RelParamKinds kinds;
        AtomFn fn;
    };
    const AtomDef* find_atom(const std::string& name) const;

private:
    std::map<std::string, AtomDef> atoms_;
    std::map<std::string, Def> defs_;
};

// The standard library: comparison/arithmetic atoms plus the quicksort
// relations (perm, bdry, split, part, sort variants, R_1..R_5, the k-indexed
// families and the final specification).
const RelLibrary& standard_relations();
RelLibrary& standard_relations_mut();

// Named bindings for evaluation.
struct RelBinding {
    std::map<std::string, DataSem> data;
    std::map<std::string, ProcSem> procs;
    std::map<std::string, long> ints;

    static RelBinding from_env(const Env& env);
};

struct RelCtx {
    const RelLibrary* lib;
    Domain domain;
    Fuel fuel;
    // cache for closed Ref applications (procedure + int arguments only)
    mutable std::map<std::tuple<std::string, const void*, std::vector<long>>, bool> ref_cache;
};

bool eval_rel(const RelExprPtr& rel, const RelBinding& binding, const RelCtx& ctx);

// Relational judgment over a term's finite-domain denotation.
struct HoldsResult {
    enum class Verdict { Valid, CounterExample, Unknown };
    Verdict verdict = Verdict::Valid;
    std::optional<Env> counterexample;
    bool fuel_involved = false;
};

HoldsResult holds(const RelExprPtr& rel, const TermPtr& term, const Env& base_env,
                  const RelCtx& ctx, const std::map<std::string, long>& int_bindings = {});

}  // namespace plstar
