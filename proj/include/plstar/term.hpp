#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plstar/diagnostics.hpp"
#include "plstar/varid.hpp"

namespace plstar {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Declared effect of a primitive on its listed variables. reads/writes are
// subsets of the node's variable list; psi_transformer names a registered
// store transformer when the primitive has side effects.
struct EffectSummary {
    VarSet reads;
    VarSet writes;
    std::optional<std::string> psi_transformer;

    bool has_psi_effect() const { return psi_transformer.has_value(); }
    bool operator==(const EffectSummary&) const = default;
};

struct Fragment {
    std::string name;
    std::vector<VarId> vars;
};

struct Prim {
    std::string name;
    std::vector<VarId> vars;
    EffectSummary effect;
};

struct Seq {
    TermPtr first;
    TermPtr second;
};

struct Cond {
    VarId scrutinee;
    TermPtr then_branch;  // either branch may be null, not both
    TermPtr else_branch;
};

struct Local {
    VarId var;
    TermPtr body;
};

struct ProcDef {
    VarId name;  // an output of the node; may be called recursively in body
    std::vector<VarId> formals;
    TermPtr body;
};

struct ProcCall {
    VarId callee;
    std::vector<VarId> actuals;
    TermPtr prefix;  // the P of "P; call p(...)"; usually null
};

struct Fix {
    VarId used;     // bound: the recursion placeholder, an input of the body
    VarId defined;  // free: the procedure the body defines
    TermPtr body;
};

using TermNode = std::variant<Fragment, Prim, Seq, Cond, Local, ProcDef, ProcCall, Fix>;

struct Term {
    TermNode node;
    SourceSpan span;
    // Data variables listed on the fragment without occurring in it (the
    // new-variable axiom). Produced by pad_variables.
    std::vector<VarId> padded;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
};

// Constructors validate the structural invariants that do not need analysis:
// kind categories of binders, psi never listed, Cond branches not both empty.
TermPtr mk_fragment(std::string name, std::vector<VarId> vars, SourceSpan span = {});
TermPtr mk_prim(std::string name, std::vector<VarId> vars, EffectSummary effect,
                SourceSpan span = {});
TermPtr mk_seq(TermPtr first, TermPtr second, SourceSpan span = {});
TermPtr mk_cond(VarId scrutinee, TermPtr then_branch, TermPtr else_branch,
                SourceSpan span = {});
TermPtr mk_local(VarId var, TermPtr body, SourceSpan span = {});
TermPtr mk_procdef(VarId name, std::vector<VarId> formals, TermPtr body,
                   SourceSpan span = {});
TermPtr mk_proccall(VarId callee, std::vector<VarId> actuals, TermPtr prefix = nullptr,
                    SourceSpan span = {});
TermPtr mk_fix(VarId used, VarId defined, TermPtr body, SourceSpan span = {});

TermPtr with_padding(TermPtr term, std::vector<VarId> padded);

// Structural equality; spans ignored, names significant.
bool term_equal(const TermPtr& a, const TermPtr& b);

// Variables occurring free in the term (binding structure only; primitive
// names are not variables here). Includes padded variables.
VarSet free_vars(const TermPtr& term);

// All names occurring anywhere in the term, bound or free; used to seed
// fresh-name generation.
VarSet all_vars(const TermPtr& term);

bool contains_fragment(const TermPtr& term);
bool contains_psi_effect(const TermPtr& term);

// One-line debug rendering (not the textual syntax; see printer.hpp).
std::string term_brief(const TermPtr& term);

}  // namespace plstar
