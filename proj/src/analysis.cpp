#include "plstar/analysis.hpp"

#include <algorithm>
#include <map>

#include "plstar/builtins.hpp"

namespace plstar {

namespace {

VarSet set_union(const VarSet& a, const VarSet& b) {
    VarSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

VarSet set_minus(const VarSet& a, const VarSet& b) {
    VarSet out;
    for (const auto& v : a) {
        if (!b.count(v)) out.insert(v);
    }
    return out;
}

VarSet set_intersect(const VarSet& a, const VarSet& b) {
    VarSet out;
    for (const auto& v : a) {
        if (b.count(v)) out.insert(v);
    }
    return out;
}

void split_kinds(const std::vector<VarId>& vars, VarSet& data, VarSet& procs) {
    for (const auto& v : vars) {
        (v.is_proc ? procs : data).insert(v);
    }
}

// in/out contribution of the call part of a ProcCall node.
void call_sets(const VarId& callee, const std::vector<VarId>& actuals, VarSets& out_sets) {
    VarSet call_in;
    VarSet call_out;
    call_in.insert(callee);
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const ArgSig& a = callee.sig->args[i];
        if (argio_in(a.io)) call_in.insert(actuals[i]);
        if (argio_out(a.io)) call_out.insert(actuals[i]);
    }
    out_sets.outputs = call_out;
    out_sets.inputs = set_minus(call_in, call_out);
    split_kinds(actuals, out_sets.data, out_sets.procs);
    out_sets.procs.insert(callee);
}

VarSets combine_seq(const VarSets& a, const VarSets& b) {
    VarSets out;
    out.outputs = set_union(a.outputs, b.outputs);
    out.inputs = set_minus(set_union(a.inputs, b.inputs), out.outputs);
    out.data = set_union(a.data, b.data);
    out.procs = set_union(a.procs, b.procs);
    return out;
}

}  // namespace

VarSet VarSets::free() const { return set_union(inputs, outputs); }

VarSets var_sets(const TermPtr& term) {
    VarSets sets;
    if (!term) return sets;
    if (const auto* f = term->as<Fragment>()) {
        // a hole constrains nothing: every listed variable counts as an input
        sets.inputs.insert(f->vars.begin(), f->vars.end());
        split_kinds(f->vars, sets.data, sets.procs);
    } else if (const auto* p = term->as<Prim>()) {
        sets.outputs = p->effect.writes;
        sets.inputs = set_minus(p->effect.reads, p->effect.writes);
        sets.inputs.insert(prim_ref_var(p->name));
        split_kinds(p->vars, sets.data, sets.procs);
        sets.procs.insert(prim_ref_var(p->name));
    } else if (const auto* s = term->as<Seq>()) {
        sets = combine_seq(var_sets(s->first), var_sets(s->second));
    } else if (const auto* c = term->as<Cond>()) {
        VarSets a = var_sets(c->then_branch);
        VarSets b = var_sets(c->else_branch);
        sets.outputs = set_union(a.outputs, b.outputs);
        VarSet ins = set_union(a.inputs, b.inputs);
        ins.insert(c->scrutinee);
        sets.inputs = set_minus(ins, sets.outputs);
        sets.data = set_union(a.data, b.data);
        sets.data.insert(c->scrutinee);
        sets.procs = set_union(a.procs, b.procs);
    } else if (const auto* l = term->as<Local>()) {
        VarSets body = var_sets(l->body);
        VarSet bound = {l->var};
        sets.inputs = set_minus(body.inputs, bound);
        sets.outputs = set_minus(body.outputs, bound);
        sets.data = set_minus(body.data, bound);
        sets.procs = set_minus(body.procs, bound);
    } else if (const auto* d = term->as<ProcDef>()) {
        VarSets body = var_sets(d->body);
        VarSet bound(d->formals.begin(), d->formals.end());
        sets.outputs = set_minus(body.outputs, bound);
        sets.outputs.insert(d->name);
        sets.inputs = set_minus(body.inputs, bound);
        sets.inputs.erase(d->name);
        sets.data = set_minus(body.data, bound);
        sets.procs = set_minus(body.procs, bound);
        sets.procs.insert(d->name);
    } else if (const auto* k = term->as<ProcCall>()) {
        VarSets call;
        call_sets(k->callee, k->actuals, call);
        if (k->prefix) {
            sets = combine_seq(var_sets(k->prefix), call);
        } else {
            sets = call;
        }
    } else if (const auto* x = term->as<Fix>()) {
        VarSets body = var_sets(x->body);
        sets.outputs = body.outputs;
        sets.inputs = body.inputs;
        sets.inputs.erase(x->used);
        sets.data = body.data;
        sets.procs = body.procs;
        sets.procs.erase(x->used);
        sets.procs.insert(x->defined);
    }
    for (const auto& v : term->padded) {
        sets.data.insert(v);
        if (!sets.outputs.count(v)) sets.inputs.insert(v);
    }
    return sets;
}

namespace {

TypeFlags flags_of_argsig(const ArgSig& arg, const std::vector<int>& path, std::size_t at) {
    if (at == path.size()) {
        return TypeFlags{argio_in(arg.io), argio_out(arg.io), !arg.is_proc, arg.is_proc};
    }
    if (!arg.is_proc) {
        throw PlError(Err::UnknownVariable, "argument path descends into a data argument");
    }
    int i = path[at];
    if (i < 1 || static_cast<std::size_t>(i) > arg.proc_sig->arity()) {
        throw PlError(Err::UnknownVariable, "argument index out of range");
    }
    return flags_of_argsig(arg.proc_sig->args[static_cast<std::size_t>(i) - 1], path, at + 1);
}

TypeFlags flags_of_sig(const TypeSigPtr& sig, const std::vector<int>& path, std::size_t at) {
    if (!sig || path.size() == at) {
        throw PlError(Err::UnknownVariable, "no argument structure available");
    }
    int i = path[at];
    if (i < 1 || static_cast<std::size_t>(i) > sig->arity()) {
        throw PlError(Err::UnknownVariable, "argument index out of range");
    }
    return flags_of_argsig(sig->args[static_cast<std::size_t>(i) - 1], path, at + 1);
}

TypeFlags flags_of_var(const VarId& v, const std::vector<int>& path, std::size_t at) {
    if (at == path.size()) {
        // only kind information at the variable itself
        return TypeFlags{false, false, !v.is_proc, v.is_proc};
    }
    if (!v.is_proc) {
        throw PlError(Err::UnknownVariable, "data variable " + v.name + " has no arguments");
    }
    return flags_of_sig(v.sig, path, at);
}

// How x's first free occurrence uses it: (initial value consumed, final
// value produced).
std::optional<std::pair<bool, bool>> first_use_io(const VarId& x, const TermPtr& term) {
    if (!term) return std::nullopt;
    if (const auto* f = term->as<Fragment>()) {
        for (const auto& v : f->vars) {
            if (v == x) return std::make_pair(true, false);
        }
        return std::nullopt;
    }
    if (const auto* p = term->as<Prim>()) {
        const Builtin* b = BuiltinRegistry::instance().find(p->name);
        for (std::size_t i = 0; i < p->vars.size(); ++i) {
            if (p->vars[i] != x) continue;
            if (b && i < b->sig->arity()) {
                const ArgSig& a = b->sig->args[i];
                return std::make_pair(argio_in(a.io), argio_out(a.io));
            }
            return std::make_pair(p->effect.reads.count(x) != 0, p->effect.writes.count(x) != 0);
        }
        return std::nullopt;
    }
    if (const auto* s = term->as<Seq>()) {
        if (auto got = first_use_io(x, s->first)) return got;
        return first_use_io(x, s->second);
    }
    if (const auto* c = term->as<Cond>()) {
        if (c->scrutinee == x) return std::make_pair(true, false);
        if (auto got = first_use_io(x, c->then_branch)) return got;
        return first_use_io(x, c->else_branch);
    }
    if (const auto* l = term->as<Local>()) {
        if (l->var == x) return std::nullopt;
        return first_use_io(x, l->body);
    }
    if (const auto* d = term->as<ProcDef>()) {
        if (d->name == x) return std::make_pair(false, true);
        for (const auto& f : d->formals) {
            if (f == x) return std::nullopt;
        }
        return first_use_io(x, d->body);
    }
    if (const auto* k = term->as<ProcCall>()) {
        if (k->prefix) {
            if (auto got = first_use_io(x, k->prefix)) return got;
        }
        if (k->callee == x) return std::make_pair(true, false);
        for (std::size_t i = 0; i < k->actuals.size(); ++i) {
            if (k->actuals[i] != x) continue;
            const ArgSig& a = k->callee.sig->args[i];
            return std::make_pair(argio_in(a.io), argio_out(a.io));
        }
        return std::nullopt;
    }
    if (const auto* xx = term->as<Fix>()) {
        if (xx->used == x) return std::nullopt;
        return first_use_io(x, xx->body);
    }
    return std::nullopt;
}

TypeFlags descend(const VarId& x, const TermPtr& term, const std::vector<int>& path,
                  std::size_t at);

// Flags of a defined procedure's formal, derived from the body: out when the
// body defines it, in when its initial value is consumed.
TypeFlags formal_flags(const VarId& formal, const TermPtr& body, const std::vector<int>& path,
                       std::size_t at) {
    if (at < path.size()) {
        // deeper structure comes from the formal's declared signature unless
        // the body defines it (it cannot: no redefinition)
        return descend(formal, body, path, at);
    }
    VarSets vs = var_sets(body);
    auto first = first_use_io(formal, body);
    bool in = (first && first->first) || vs.inputs.count(formal) != 0;
    bool out = vs.outputs.count(formal) != 0 || (first && first->second);
    return TypeFlags{in, out, !formal.is_proc, formal.is_proc};
}

bool occurs_free(const VarId& x, const TermPtr& term) {
    if (!term) return false;
    return free_vars(term).count(x) != 0;
}

TypeFlags descend(const VarId& x, const TermPtr& term, const std::vector<int>& path,
                  std::size_t at) {
    if (!term) throw PlError(Err::UnknownVariable, x.name + " does not occur here");
    if (term->as<Fragment>()) {
        return flags_of_var(x, path, at);
    }
    if (const auto* p = term->as<Prim>()) {
        if (x.is_proc && x.name == p->name) {
            const Builtin* b = BuiltinRegistry::instance().find(p->name);
            return flags_of_sig(b ? b->sig : x.sig, path, at);
        }
        const Builtin* b = BuiltinRegistry::instance().find(p->name);
        for (std::size_t i = 0; i < p->vars.size(); ++i) {
            if (p->vars[i] != x) continue;
            if (b) {
                std::vector<int> full;
                full.push_back(static_cast<int>(i + 1));
                full.insert(full.end(), path.begin() + static_cast<long>(at), path.end());
                return flags_of_sig(b->sig, full, 0);
            }
            return flags_of_var(x, path, at);
        }
        throw PlError(Err::UnknownVariable, x.name + " does not occur here");
    }
    if (const auto* s = term->as<Seq>()) {
        if (occurs_free(x, s->first)) return descend(x, s->first, path, at);
        return descend(x, s->second, path, at);
    }
    if (const auto* c = term->as<Cond>()) {
        if (c->scrutinee == x) return flags_of_var(x, path, at);
        if (occurs_free(x, c->then_branch)) return descend(x, c->then_branch, path, at);
        return descend(x, c->else_branch, path, at);
    }
    if (const auto* l = term->as<Local>()) {
        if (l->var == x) throw PlError(Err::UnknownVariable, x.name + " is bound here");
        return descend(x, l->body, path, at);
    }
    if (const auto* d = term->as<ProcDef>()) {
        if (d->name == x) {
            int i = path[at];
            if (i < 1 || static_cast<std::size_t>(i) > d->formals.size()) {
                throw PlError(Err::UnknownVariable, "argument index out of range");
            }
            return formal_flags(d->formals[static_cast<std::size_t>(i) - 1], d->body, path,
                                at + 1);
        }
        for (const auto& f : d->formals) {
            if (f == x) throw PlError(Err::UnknownVariable, x.name + " is bound here");
        }
        return descend(x, d->body, path, at);
    }
    if (const auto* k = term->as<ProcCall>()) {
        if (k->prefix && occurs_free(x, k->prefix)) return descend(x, k->prefix, path, at);
        if (k->callee == x) return flags_of_sig(k->callee.sig, path, at);
        for (std::size_t i = 0; i < k->actuals.size(); ++i) {
            if (k->actuals[i] != x) continue;
            std::vector<int> full;
            full.push_back(static_cast<int>(i + 1));
            full.insert(full.end(), path.begin() + static_cast<long>(at), path.end());
            return flags_of_sig(k->callee.sig, full, 0);
        }
        throw PlError(Err::UnknownVariable, x.name + " does not occur here");
    }
    if (const auto* xx = term->as<Fix>()) {
        if (xx->used == x) throw PlError(Err::UnknownVariable, x.name + " is bound here");
        return descend(x, xx->body, path, at);
    }
    throw PlError(Err::UnknownVariable, x.name + " does not occur here");
}

}  // namespace

TypeFlags type_of(const VarId& x, const TermPtr& term, const std::vector<int>& alpha) {
    VarSets vs = var_sets(term);
    if (!vs.free().count(x) && !vs.data.count(x)) {
        throw PlError(Err::UnknownVariable, x.name + " is not a variable of the term");
    }
    if (alpha.empty()) {
        return TypeFlags{vs.inputs.count(x) != 0, vs.outputs.count(x) != 0,
                         vs.data.count(x) != 0, vs.procs.count(x) != 0};
    }
    return descend(x, term, alpha, 0);
}

namespace {

struct PrecondChecker {
    std::vector<Diagnostic> diags;

    void report(DiagCode code, std::string message, const SourceSpan& span,
                std::vector<std::string> related = {}) {
        diags.push_back(Diagnostic{code, std::move(message), span, std::move(related)});
    }

    void seq_conditions(const VarSets& a, const VarSets& b, bool psi_left, bool psi_right,
                        const SourceSpan& span) {
        VarSet shared = set_intersect(a.outputs, b.outputs);
        for (const auto& v : shared) {
            if (v.is_proc) {
                report(DiagCode::SharedProcOutput,
                       "procedure " + v.name + " is an output of both sides of a composition",
                       span, {v.name});
            }
        }
        if ((psi_left || psi_right) && a.data != b.data) {
            std::vector<std::string> related;
            for (const auto& v : set_minus(set_union(a.data, b.data),
                                           set_intersect(a.data, b.data))) {
                related.push_back(v.name);
            }
            report(DiagCode::DataSetMismatch,
                   "side-effecting composition requires equal data sets; pad the fragments",
                   span, std::move(related));
        }
    }

    void visit(const TermPtr& term) {
        if (!term) return;
        if (const auto* s = term->as<Seq>()) {
            seq_conditions(var_sets(s->first), var_sets(s->second),
                           contains_psi_effect(s->first), contains_psi_effect(s->second),
                           term->span);
            visit(s->first);
            visit(s->second);
        } else if (const auto* c = term->as<Cond>()) {
            visit(c->then_branch);
            visit(c->else_branch);
        } else if (const auto* l = term->as<Local>()) {
            visit(l->body);
        } else if (const auto* d = term->as<ProcDef>()) {
            VarSets body = var_sets(d->body);
            VarSet formals(d->formals.begin(), d->formals.end());
            for (const auto& v : set_minus(body.outputs, formals)) {
                report(DiagCode::FormalIsOuterOutput,
                       "procedure " + d->name.name + " defines outer variable " + v.name,
                       term->span, {v.name});
            }
            if (contains_psi_effect(d->body)) {
                report(DiagCode::SideEffectOnCapturedVar,
                       "body of " + d->name.name +
                           " reaches a primitive with a declared side effect",
                       term->span, {d->name.name});
            }
            visit(d->body);
        } else if (const auto* k = term->as<ProcCall>()) {
            if (k->prefix) {
                VarSets call;
                call_sets(k->callee, k->actuals, call);
                seq_conditions(var_sets(k->prefix), call, contains_psi_effect(k->prefix), false,
                               term->span);
                visit(k->prefix);
            }
        } else if (const auto* x = term->as<Fix>()) {
            VarSets body = var_sets(x->body);
            if (!x->used.is_proc || !body.inputs.count(x->used)) {
                report(DiagCode::FixVarKind,
                       "fix variable " + x->used.name + " must be an input procedure of the body",
                       term->span, {x->used.name});
            }
            if (!x->defined.is_proc || !body.outputs.count(x->defined)) {
                report(DiagCode::FixVarKind,
                       "fix variable " + x->defined.name +
                           " must be an output procedure of the body",
                       term->span, {x->defined.name});
            }
            visit(x->body);
        }
    }

    void collect_defs(const TermPtr& term, std::map<VarId, int>& counts) {
        if (!term) return;
        if (const auto* s = term->as<Seq>()) {
            collect_defs(s->first, counts);
            collect_defs(s->second, counts);
        } else if (const auto* c = term->as<Cond>()) {
            collect_defs(c->then_branch, counts);
            collect_defs(c->else_branch, counts);
        } else if (const auto* l = term->as<Local>()) {
            collect_defs(l->body, counts);
        } else if (const auto* d = term->as<ProcDef>()) {
            auto it = counts.emplace(d->name, 0).first;
            ++it->second;
            if (it->second == 2) {
                report(DiagCode::ProcRedefined,
                       "procedure " + d->name.name + " is defined twice", term->span,
                       {d->name.name});
            }
            collect_defs(d->body, counts);
        } else if (const auto* k = term->as<ProcCall>()) {
            collect_defs(k->prefix, counts);
        } else if (const auto* x = term->as<Fix>()) {
            collect_defs(x->body, counts);
        }
    }

    // Forward scan: every data read must see a prior definition.
    void scan_defined(const TermPtr& term, VarSet& defined) {
        if (!term) return;
        if (const auto* p = term->as<Prim>()) {
            for (const auto& r : p->effect.reads) {
                if (!r.is_proc && !defined.count(r)) {
                    report(DiagCode::DataUseBeforeDef,
                           "data variable " + r.name + " is used before it is defined",
                           term->span, {r.name});
                }
            }
            for (const auto& w : p->effect.writes) {
                if (!w.is_proc) defined.insert(w);
            }
        } else if (const auto* s = term->as<Seq>()) {
            scan_defined(s->first, defined);
            scan_defined(s->second, defined);
        } else if (const auto* c = term->as<Cond>()) {
            if (!defined.count(c->scrutinee)) {
                report(DiagCode::DataUseBeforeDef,
                       "condition " + c->scrutinee.name + " is used before it is defined",
                       term->span, {c->scrutinee.name});
            }
            VarSet then_defined = defined;
            VarSet else_defined = defined;
            scan_defined(c->then_branch, then_defined);
            scan_defined(c->else_branch, else_defined);
            defined = set_intersect(then_defined, else_defined);
        } else if (const auto* l = term->as<Local>()) {
            bool outer = defined.count(l->var) != 0;
            defined.erase(l->var);
            scan_defined(l->body, defined);
            if (outer) {
                defined.insert(l->var);
            } else {
                defined.erase(l->var);
            }
        } else if (const auto* d = term->as<ProcDef>()) {
            VarSet inner = defined;
            for (std::size_t i = 0; i < d->formals.size(); ++i) {
                if (d->formals[i].is_proc) continue;
                if (argio_in(d->name.sig->args[i].io)) {
                    inner.insert(d->formals[i]);
                } else {
                    inner.erase(d->formals[i]);
                }
            }
            scan_defined(d->body, inner);
        } else if (const auto* k = term->as<ProcCall>()) {
            if (k->prefix) scan_defined(k->prefix, defined);
            for (std::size_t i = 0; i < k->actuals.size(); ++i) {
                const ArgSig& a = k->callee.sig->args[i];
                if (!k->actuals[i].is_proc && argio_in(a.io) && !defined.count(k->actuals[i])) {
                    report(DiagCode::DataUseBeforeDef,
                           "data variable " + k->actuals[i].name +
                               " is used before it is defined",
                           term->span, {k->actuals[i].name});
                }
            }
            for (std::size_t i = 0; i < k->actuals.size(); ++i) {
                if (!k->actuals[i].is_proc && argio_out(k->callee.sig->args[i].io)) {
                    defined.insert(k->actuals[i]);
                }
            }
        } else if (const auto* x = term->as<Fix>()) {
            scan_defined(x->body, defined);
        }
    }
};

}  // namespace

std::vector<Diagnostic> check_preconditions(const TermPtr& term) {
    PrecondChecker checker;
    checker.visit(term);
    std::map<VarId, int> counts;
    checker.collect_defs(term, counts);
    VarSet defined;
    for (const auto& v : free_vars(term)) {
        if (!v.is_proc) defined.insert(v);
    }
    checker.scan_defined(term, defined);
    sort_diagnostics(checker.diags);
    return checker.diags;
}

TermPtr pad_variables(const TermPtr& term, const VarSet& extra) {
    if (extra.empty()) return term;
    VarSet fv = free_vars(term);
    std::vector<VarId> padded = term->padded;
    for (const auto& v : extra) {
        if (v.is_proc || v.is_psi) {
            throw PlError(Err::KindError, "padding variable " + v.name + " must be data");
        }
        if (fv.count(v)) {
            throw PlError(Err::VarAlreadyPresent,
                          "variable " + v.name + " already appears in the fragment");
        }
        padded.push_back(v);
    }
    std::sort(padded.begin(), padded.end());
    padded.erase(std::unique(padded.begin(), padded.end()), padded.end());
    return with_padding(term, std::move(padded));
}

std::vector<Diagnostic> check_subst(const TermPtr& term, const Substitution& theta) {
    std::vector<Diagnostic> diags;
    for (const auto& [from, to] : theta.pairs()) {
        if (from.is_psi || to.is_psi) {
            if (from == to) continue;
            diags.push_back(Diagnostic{DiagCode::PsiViolation,
                                       "substitution moves psi", term ? term->span : SourceSpan{},
                                       {from.name}});
            continue;
        }
        if (!same_kind(from, to)) {
            diags.push_back(Diagnostic{DiagCode::KindMismatch,
                                       "substitution " + from.name + " -> " + to.name +
                                           " does not preserve the variable kind",
                                       term ? term->span : SourceSpan{},
                                       {from.name, to.name}});
        }
    }
    VarSets vs = var_sets(term);
    for (auto it = vs.outputs.begin(); it != vs.outputs.end(); ++it) {
        for (auto jt = std::next(it); jt != vs.outputs.end(); ++jt) {
            if (theta(*it) == theta(*jt)) {
                diags.push_back(Diagnostic{DiagCode::NotOutputInjective,
                                           "outputs " + it->name + " and " + jt->name +
                                               " map to one variable",
                                           term->span,
                                           {it->name, jt->name}});
            }
        }
    }
    for (auto it = vs.data.begin(); it != vs.data.end(); ++it) {
        for (auto jt = std::next(it); jt != vs.data.end(); ++jt) {
            if (theta(*it) == theta(*jt)) {
                diags.push_back(Diagnostic{DiagCode::DataIdentified,
                                           "data variables " + it->name + " and " + jt->name +
                                               " are identified",
                                           term->span,
                                           {it->name, jt->name}});
            }
        }
    }
    sort_diagnostics(diags);
    return diags;
}

namespace {

void sig_agreement_rec(const TermPtr& term, std::vector<Diagnostic>& diags) {
    if (!term) return;
    if (const auto* d = term->as<ProcDef>()) {
        VarSets body = var_sets(d->body);
        for (std::size_t i = 0; i < d->formals.size(); ++i) {
            const VarId& formal = d->formals[i];
            auto first = first_use_io(formal, d->body);
            bool derived_in = (first && first->first) || body.inputs.count(formal) != 0;
            bool derived_out = body.outputs.count(formal) != 0 || (first && first->second);
            const ArgSig& a = d->name.sig->args[i];
            bool declared_in = argio_in(a.io);
            bool declared_out = argio_out(a.io);
            if (declared_out != derived_out || (derived_in && !declared_in)) {
                diags.push_back(Diagnostic{
                    DiagCode::SigMismatch,
                    "argument " + std::to_string(i + 1) + " of " + d->name.name +
                        " is declared " + argio_name(a.io) + " but the body makes it " +
                        (derived_in ? (derived_out ? "inout" : "in")
                                    : (derived_out ? "out" : "unused")),
                    term->span,
                    {formal.name}});
            }
        }
        sig_agreement_rec(d->body, diags);
    } else if (const auto* s = term->as<Seq>()) {
        sig_agreement_rec(s->first, diags);
        sig_agreement_rec(s->second, diags);
    } else if (const auto* c = term->as<Cond>()) {
        sig_agreement_rec(c->then_branch, diags);
        sig_agreement_rec(c->else_branch, diags);
    } else if (const auto* l = term->as<Local>()) {
        sig_agreement_rec(l->body, diags);
    } else if (const auto* k = term->as<ProcCall>()) {
        sig_agreement_rec(k->prefix, diags);
    } else if (const auto* x = term->as<Fix>()) {
        sig_agreement_rec(x->body, diags);
    }
}

}  // namespace

std::vector<Diagnostic> check_sig_agreement(const TermPtr& term) {
    std::vector<Diagnostic> diags;
    sig_agreement_rec(term, diags);
    sort_diagnostics(diags);
    return diags;
}

}  // namespace plstar
