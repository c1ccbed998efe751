#pragma once

#include <vector>

#include "plstar/subst.hpp"
#include "plstar/term.hpp"

namespace plstar {

// Input/output/data/procedure variable sets of a term, computed structurally.
// A variable defined anywhere is an output of the whole fragment; inputs and
// outputs are disjoint. Primitive names count as input procedure variables.
// psi is implicit and never appears here.
struct VarSets {
    VarSet inputs;
    VarSet outputs;
    VarSet data;
    VarSet procs;

    VarSet free() const;
};

VarSets var_sets(const TermPtr& term);

struct TypeFlags {
    bool in = false;
    bool out = false;
    bool data = false;
    bool proc = false;

    bool operator==(const TypeFlags&) const = default;
};

// The 4-tuple (in, out, data, proc) of x at argument path alpha (1-based
// indices; empty = x itself). Argument flags follow the structural axioms:
// a defined procedure's argument takes its formal's flags in the body, a
// call's actual takes the callee's argument flags.
TypeFlags type_of(const VarId& x, const TermPtr& term, const std::vector<int>& alpha);

// Per-node operator preconditions. Empty iff every Seq, Cond, ProcDef,
// ProcCall and Fix node is allowed. The shared-data-set condition on
// composition applies only when declared side effects are present; fragments
// without psi effects compose freely.
std::vector<Diagnostic> check_preconditions(const TermPtr& term);

// Adds unused data variables to the term's listed set (new variable axiom).
TermPtr pad_variables(const TermPtr& term, const VarSet& extra);

// Substitution legality on a term: output-injective, identifies no two data
// variables, kind-preserving, fixes psi.
std::vector<Diagnostic> check_subst(const TermPtr& term, const Substitution& theta);

// Declared signatures of defined procedures against the analysis of their
// bodies: out flags must match exactly, in flags may widen analysis results.
std::vector<Diagnostic> check_sig_agreement(const TermPtr& term);

}  // namespace plstar
