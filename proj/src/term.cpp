#include "plstar/term.hpp"

#include <algorithm>

namespace plstar {

namespace {

void reject_psi(const std::vector<VarId>& vars, const char* where) {
    for (const auto& v : vars) {
        if (v.is_psi) {
            throw PlError(Err::PsiViolation,
                          std::string("psi may not be listed explicitly in ") + where);
        }
    }
}

TermPtr finish(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

TermPtr mk_fragment(std::string name, std::vector<VarId> vars, SourceSpan span) {
    reject_psi(vars, "a fragment variable list");
    Term t;
    t.node = Fragment{std::move(name), std::move(vars)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_prim(std::string name, std::vector<VarId> vars, EffectSummary effect,
                SourceSpan span) {
    reject_psi(vars, "a primitive variable list");
    VarSet listed(vars.begin(), vars.end());
    for (const auto& w : effect.writes) {
        if (!listed.count(w)) {
            throw PlError(Err::BadTerm,
                          "primitive " + name + " writes unlisted variable " + w.name, span);
        }
    }
    for (const auto& r : effect.reads) {
        if (!listed.count(r)) {
            throw PlError(Err::BadTerm,
                          "primitive " + name + " reads unlisted variable " + r.name, span);
        }
    }
    Term t;
    t.node = Prim{std::move(name), std::move(vars), std::move(effect)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_seq(TermPtr first, TermPtr second, SourceSpan span) {
    if (!first || !second) throw PlError(Err::BadTerm, "sequence with an empty side", span);
    Term t;
    t.node = Seq{std::move(first), std::move(second)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_cond(VarId scrutinee, TermPtr then_branch, TermPtr else_branch, SourceSpan span) {
    if (scrutinee.is_proc || scrutinee.is_psi) {
        throw PlError(Err::KindError, "conditional scrutinee must be a data variable", span);
    }
    if (!then_branch && !else_branch) {
        throw PlError(Err::BadTerm, "conditional with both branches empty", span);
    }
    Term t;
    t.node = Cond{std::move(scrutinee), std::move(then_branch), std::move(else_branch)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_local(VarId var, TermPtr body, SourceSpan span) {
    if (!body) throw PlError(Err::BadTerm, "local declaration with empty body", span);
    if (var.is_psi) throw PlError(Err::PsiViolation, "psi cannot be declared local", span);
    Term t;
    t.node = Local{std::move(var), std::move(body)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_procdef(VarId name, std::vector<VarId> formals, TermPtr body, SourceSpan span) {
    if (!body) throw PlError(Err::BadTerm, "procedure definition with empty body", span);
    if (!name.is_proc) {
        throw PlError(Err::KindError, "defined procedure " + name.name + " is not a proc variable",
                      span);
    }
    reject_psi(formals, "a formal parameter list");
    if (!name.sig || name.sig->arity() != formals.size()) {
        throw PlError(Err::VarArityMismatch,
                      "procedure " + name.name + " signature arity does not match formals", span);
    }
    for (std::size_t i = 0; i < formals.size(); ++i) {
        const ArgSig& a = name.sig->args[i];
        if (a.is_proc != formals[i].is_proc ||
            (a.is_proc ? !typesig_equal(a.proc_sig, formals[i].sig) : a.sort != formals[i].sort)) {
            throw PlError(Err::KindError,
                          "formal " + formals[i].name + " disagrees with the signature of " +
                              name.name,
                          span);
        }
        if (formals[i] == name) {
            throw PlError(Err::BadTerm, "procedure name used as its own formal", span);
        }
    }
    Term t;
    t.node = ProcDef{std::move(name), std::move(formals), std::move(body)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_proccall(VarId callee, std::vector<VarId> actuals, TermPtr prefix, SourceSpan span) {
    if (!callee.is_proc) {
        throw PlError(Err::KindError, "call of data variable " + callee.name, span);
    }
    reject_psi(actuals, "an actual parameter list");
    if (!callee.sig || callee.sig->arity() != actuals.size()) {
        throw PlError(Err::VarArityMismatch,
                      "call of " + callee.name + " with wrong argument count", span);
    }
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const ArgSig& a = callee.sig->args[i];
        if (a.is_proc != actuals[i].is_proc) {
            throw PlError(Err::KindError,
                          "argument " + std::to_string(i + 1) + " of " + callee.name +
                              " has the wrong kind",
                          span);
        }
    }
    Term t;
    t.node = ProcCall{std::move(callee), std::move(actuals), std::move(prefix)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr mk_fix(VarId used, VarId defined, TermPtr body, SourceSpan span) {
    if (!body) throw PlError(Err::BadTerm, "fixpoint with empty body", span);
    if (!used.is_proc || !defined.is_proc) {
        throw PlError(Err::KindError, "fixpoint variables must be procedure variables", span);
    }
    if (!typesig_equal(used.sig, defined.sig)) {
        throw PlError(Err::KindMismatch, "fixpoint variables must share one signature", span);
    }
    if (used == defined) {
        throw PlError(Err::BadTerm, "fixpoint identifies a variable with itself", span);
    }
    Term t;
    t.node = Fix{std::move(used), std::move(defined), std::move(body)};
    t.span = span;
    return finish(std::move(t));
}

TermPtr with_padding(TermPtr term, std::vector<VarId> padded) {
    reject_psi(padded, "a padding list");
    Term t = *term;
    t.padded = std::move(padded);
    return finish(std::move(t));
}

namespace {

bool vars_equal(const std::vector<VarId>& a, const std::vector<VarId>& b) {
    return a == b;
}

bool opt_equal(const TermPtr& a, const TermPtr& b) {
    if (!a && !b) return true;
    if (!a || !b) return false;
    return term_equal(a, b);
}

}  // namespace

bool term_equal(const TermPtr& a, const TermPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;
    if (a->padded != b->padded) return false;
    if (const auto* fa = a->as<Fragment>()) {
        const auto* fb = b->as<Fragment>();
        return fa->name == fb->name && vars_equal(fa->vars, fb->vars);
    }
    if (const auto* pa = a->as<Prim>()) {
        const auto* pb = b->as<Prim>();
        return pa->name == pb->name && vars_equal(pa->vars, pb->vars) && pa->effect == pb->effect;
    }
    if (const auto* sa = a->as<Seq>()) {
        const auto* sb = b->as<Seq>();
        return term_equal(sa->first, sb->first) && term_equal(sa->second, sb->second);
    }
    if (const auto* ca = a->as<Cond>()) {
        const auto* cb = b->as<Cond>();
        return ca->scrutinee == cb->scrutinee && opt_equal(ca->then_branch, cb->then_branch) &&
               opt_equal(ca->else_branch, cb->else_branch);
    }
    if (const auto* la = a->as<Local>()) {
        const auto* lb = b->as<Local>();
        return la->var == lb->var && term_equal(la->body, lb->body);
    }
    if (const auto* da = a->as<ProcDef>()) {
        const auto* db = b->as<ProcDef>();
        return da->name == db->name && vars_equal(da->formals, db->formals) &&
               term_equal(da->body, db->body);
    }
    if (const auto* ka = a->as<ProcCall>()) {
        const auto* kb = b->as<ProcCall>();
        return ka->callee == kb->callee && vars_equal(ka->actuals, kb->actuals) &&
               opt_equal(ka->prefix, kb->prefix);
    }
    if (const auto* xa = a->as<Fix>()) {
        const auto* xb = b->as<Fix>();
        return xa->used == xb->used && xa->defined == xb->defined &&
               term_equal(xa->body, xb->body);
    }
    return false;
}

namespace {

void collect_free(const TermPtr& term, VarSet bound, VarSet& out) {
    if (!term) return;
    for (const auto& v : term->padded) {
        if (!bound.count(v)) out.insert(v);
    }
    if (const auto* f = term->as<Fragment>()) {
        for (const auto& v : f->vars) {
            if (!bound.count(v)) out.insert(v);
        }
    } else if (const auto* p = term->as<Prim>()) {
        for (const auto& v : p->vars) {
            if (!bound.count(v)) out.insert(v);
        }
    } else if (const auto* s = term->as<Seq>()) {
        collect_free(s->first, bound, out);
        collect_free(s->second, bound, out);
    } else if (const auto* c = term->as<Cond>()) {
        if (!bound.count(c->scrutinee)) out.insert(c->scrutinee);
        collect_free(c->then_branch, bound, out);
        collect_free(c->else_branch, bound, out);
    } else if (const auto* l = term->as<Local>()) {
        VarSet inner = bound;
        inner.insert(l->var);
        collect_free(l->body, std::move(inner), out);
    } else if (const auto* d = term->as<ProcDef>()) {
        if (!bound.count(d->name)) out.insert(d->name);
        VarSet inner = bound;
        for (const auto& v : d->formals) inner.insert(v);
        collect_free(d->body, std::move(inner), out);
    } else if (const auto* k = term->as<ProcCall>()) {
        if (!bound.count(k->callee)) out.insert(k->callee);
        for (const auto& v : k->actuals) {
            if (!bound.count(v)) out.insert(v);
        }
        collect_free(k->prefix, bound, out);
    } else if (const auto* x = term->as<Fix>()) {
        if (!bound.count(x->defined)) out.insert(x->defined);
        VarSet inner = bound;
        inner.insert(x->used);
        collect_free(x->body, std::move(inner), out);
    }
}

void collect_all(const TermPtr& term, VarSet& out) {
    if (!term) return;
    for (const auto& v : term->padded) out.insert(v);
    if (const auto* f = term->as<Fragment>()) {
        out.insert(f->vars.begin(), f->vars.end());
    } else if (const auto* p = term->as<Prim>()) {
        out.insert(p->vars.begin(), p->vars.end());
    } else if (const auto* s = term->as<Seq>()) {
        collect_all(s->first, out);
        collect_all(s->second, out);
    } else if (const auto* c = term->as<Cond>()) {
        out.insert(c->scrutinee);
        collect_all(c->then_branch, out);
        collect_all(c->else_branch, out);
    } else if (const auto* l = term->as<Local>()) {
        out.insert(l->var);
        collect_all(l->body, out);
    } else if (const auto* d = term->as<ProcDef>()) {
        out.insert(d->name);
        out.insert(d->formals.begin(), d->formals.end());
        collect_all(d->body, out);
    } else if (const auto* k = term->as<ProcCall>()) {
        out.insert(k->callee);
        out.insert(k->actuals.begin(), k->actuals.end());
        collect_all(k->prefix, out);
    } else if (const auto* x = term->as<Fix>()) {
        out.insert(x->used);
        out.insert(x->defined);
        collect_all(x->body, out);
    }
}

}  // namespace

VarSet free_vars(const TermPtr& term) {
    VarSet out;
    collect_free(term, {}, out);
    return out;
}

VarSet all_vars(const TermPtr& term) {
    VarSet out;
    collect_all(term, out);
    return out;
}

bool contains_fragment(const TermPtr& term) {
    if (!term) return false;
    if (term->is<Fragment>()) return true;
    if (const auto* s = term->as<Seq>())
        return contains_fragment(s->first) || contains_fragment(s->second);
    if (const auto* c = term->as<Cond>())
        return contains_fragment(c->then_branch) || contains_fragment(c->else_branch);
    if (const auto* l = term->as<Local>()) return contains_fragment(l->body);
    if (const auto* d = term->as<ProcDef>()) return contains_fragment(d->body);
    if (const auto* k = term->as<ProcCall>()) return contains_fragment(k->prefix);
    if (const auto* x = term->as<Fix>()) return contains_fragment(x->body);
    return false;
}

bool contains_psi_effect(const TermPtr& term) {
    if (!term) return false;
    if (const auto* p = term->as<Prim>()) return p->effect.has_psi_effect();
    if (const auto* s = term->as<Seq>())
        return contains_psi_effect(s->first) || contains_psi_effect(s->second);
    if (const auto* c = term->as<Cond>())
        return contains_psi_effect(c->then_branch) || contains_psi_effect(c->else_branch);
    if (const auto* l = term->as<Local>()) return contains_psi_effect(l->body);
    if (const auto* d = term->as<ProcDef>()) return contains_psi_effect(d->body);
    if (const auto* k = term->as<ProcCall>()) return contains_psi_effect(k->prefix);
    if (const auto* x = term->as<Fix>()) return contains_psi_effect(x->body);
    return false;
}

namespace {

void brief(const TermPtr& term, std::string& out) {
    if (!term) {
        out += "<empty>";
        return;
    }
    if (const auto* f = term->as<Fragment>()) {
        out += "frag " + f->name;
    } else if (const auto* p = term->as<Prim>()) {
        out += p->name + "(";
        for (std::size_t i = 0; i < p->vars.size(); ++i) {
            if (i) out += ",";
            out += p->vars[i].name;
        }
        out += ")";
    } else if (const auto* s = term->as<Seq>()) {
        brief(s->first, out);
        out += "; ";
        brief(s->second, out);
    } else if (const auto* c = term->as<Cond>()) {
        out += "if " + c->scrutinee.name + " then ";
        brief(c->then_branch, out);
        out += " else ";
        brief(c->else_branch, out);
        out += " fi";
    } else if (const auto* l = term->as<Local>()) {
        out += "var " + l->var.name + "; ";
        brief(l->body, out);
    } else if (const auto* d = term->as<ProcDef>()) {
        out += "proc " + d->name.name + "(...); ";
        brief(d->body, out);
        out += " end";
    } else if (const auto* k = term->as<ProcCall>()) {
        if (k->prefix) {
            brief(k->prefix, out);
            out += "; ";
        }
        out += "call " + k->callee.name + "(";
        for (std::size_t i = 0; i < k->actuals.size(); ++i) {
            if (i) out += ",";
            out += k->actuals[i].name;
        }
        out += ")";
    } else if (const auto* x = term->as<Fix>()) {
        out += "fix " + x->used.name + " as " + x->defined.name + " in ";
        brief(x->body, out);
        out += " end";
    }
}

}  // namespace

std::string term_brief(const TermPtr& term) {
    std::string out;
    brief(term, out);
    return out;
}

}  // namespace plstar
