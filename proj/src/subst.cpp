#include "plstar/subst.hpp"

#include <algorithm>

namespace plstar {

Substitution Substitution::of(std::vector<std::pair<VarId, VarId>> pairs) {
    Substitution theta;
    for (auto& [from, to] : pairs) theta.add(from, to);
    return theta;
}

Substitution Substitution::raw(std::vector<std::pair<VarId, VarId>> pairs) {
    Substitution theta;
    for (auto& [from, to] : pairs) theta.map_[from] = to;
    return theta;
}

void Substitution::add(const VarId& from, const VarId& to) {
    if (from.is_psi || to.is_psi) {
        if (from == to) return;  // psi -> psi is the identity
        throw PlError(Err::PsiViolation, "substitution may not move psi");
    }
    if (!same_kind(from, to)) {
        throw PlError(Err::KindMismatch,
                      "substitution " + from.name + " -> " + to.name +
                          " does not preserve the variable kind");
    }
    if (from == to) return;
    map_[from] = to;
}

const VarId& Substitution::operator()(const VarId& v) const {
    auto it = map_.find(v);
    return it == map_.end() ? v : it->second;
}

VarSet Substitution::image(const VarSet& vars) const {
    VarSet out;
    for (const auto& v : vars) out.insert((*this)(v));
    return out;
}

Substitution Substitution::then(const Substitution& other) const {
    Substitution combined;
    for (const auto& [from, to] : map_) combined.map_[from] = other(to);
    for (const auto& [from, to] : other.map_) {
        if (!combined.map_.count(from)) combined.map_[from] = to;
    }
    return combined;
}

bool Substitution::is_renaming() const {
    VarSet seen;
    for (const auto& [from, to] : map_) {
        (void)from;
        if (!seen.insert(to).second) return false;
    }
    // images must not collide with untouched variables either; callers that
    // need global injectivity check against a term's variable set themselves
    return true;
}

namespace {

std::vector<VarId> map_vars(const std::vector<VarId>& vars, const Substitution& theta) {
    std::vector<VarId> out;
    out.reserve(vars.size());
    for (const auto& v : vars) out.push_back(theta(v));
    return out;
}

VarSet map_set(const VarSet& vars, const Substitution& theta) {
    VarSet out;
    for (const auto& v : vars) out.insert(theta(v));
    return out;
}

Substitution drop(const Substitution& theta, const std::vector<VarId>& binders) {
    Substitution out;
    for (const auto& [from, to] : theta.pairs()) {
        if (std::find(binders.begin(), binders.end(), from) == binders.end()) {
            out.add(from, to);
        }
    }
    return out;
}

// Rename the binder when some free variable of the body maps onto it.
bool would_capture(const VarId& binder, const VarSet& body_free, const Substitution& theta) {
    for (const auto& v : body_free) {
        if (v == binder) continue;
        if (theta(v) == binder) return true;
    }
    return false;
}

TermPtr subst_rec(const TermPtr& term, const Substitution& theta);

// Shared handling for one binder over one body.
std::pair<VarId, TermPtr> subst_binder(const VarId& binder, const TermPtr& body,
                                       const Substitution& outer) {
    Substitution theta = drop(outer, {binder});
    VarSet body_free = free_vars(body);
    body_free.erase(binder);
    if (!would_capture(binder, body_free, theta)) {
        return {binder, subst_rec(body, theta)};
    }
    VarSet avoid = map_set(body_free, theta);
    VarSet everything = all_vars(body);
    avoid.insert(everything.begin(), everything.end());
    VarId renamed = fresh_var(binder, avoid);
    Substitution rename = Substitution::of({{binder, renamed}});
    TermPtr renamed_body = subst_rec(body, rename);
    return {renamed, subst_rec(renamed_body, theta)};
}

TermPtr subst_rec(const TermPtr& term, const Substitution& theta) {
    if (!term) return nullptr;
    if (theta.is_identity()) return term;

    std::vector<VarId> padded = map_vars(term->padded, theta);

    auto repad = [&](TermPtr rebuilt) -> TermPtr {
        if (term->padded.empty()) return rebuilt;
        // images that collapse into the term are absorbed; duplicates dropped
        VarSet fv = free_vars(rebuilt);
        std::vector<VarId> kept;
        VarSet seen;
        for (const auto& v : padded) {
            if (fv.count(v) || !seen.insert(v).second) continue;
            kept.push_back(v);
        }
        return with_padding(std::move(rebuilt), std::move(kept));
    };

    if (const auto* f = term->as<Fragment>()) {
        return repad(mk_fragment(f->name, map_vars(f->vars, theta), term->span));
    }
    if (const auto* p = term->as<Prim>()) {
        EffectSummary eff;
        eff.reads = map_set(p->effect.reads, theta);
        eff.writes = map_set(p->effect.writes, theta);
        eff.psi_transformer = p->effect.psi_transformer;
        return repad(mk_prim(p->name, map_vars(p->vars, theta), std::move(eff), term->span));
    }
    if (const auto* s = term->as<Seq>()) {
        return repad(mk_seq(subst_rec(s->first, theta), subst_rec(s->second, theta), term->span));
    }
    if (const auto* c = term->as<Cond>()) {
        return repad(mk_cond(theta(c->scrutinee), subst_rec(c->then_branch, theta),
                             subst_rec(c->else_branch, theta), term->span));
    }
    if (const auto* l = term->as<Local>()) {
        auto [binder, body] = subst_binder(l->var, l->body, theta);
        return repad(mk_local(binder, body, term->span));
    }
    if (const auto* d = term->as<ProcDef>()) {
        // formals bind together; rename each captured one before substituting
        Substitution inner = drop(theta, d->formals);
        VarSet body_free = free_vars(d->body);
        for (const auto& f : d->formals) body_free.erase(f);

        std::vector<VarId> formals = d->formals;
        TermPtr body = d->body;
        for (auto& formal : formals) {
            if (!would_capture(formal, body_free, inner)) continue;
            VarSet avoid = map_set(body_free, inner);
            VarSet everything = all_vars(body);
            avoid.insert(everything.begin(), everything.end());
            VarId renamed = fresh_var(formal, avoid);
            body = subst_rec(body, Substitution::of({{formal, renamed}}));
            formal = renamed;
        }
        return repad(
            mk_procdef(theta(d->name), std::move(formals), subst_rec(body, inner), term->span));
    }
    if (const auto* k = term->as<ProcCall>()) {
        return repad(mk_proccall(theta(k->callee), map_vars(k->actuals, theta),
                                 subst_rec(k->prefix, theta), term->span));
    }
    if (const auto* x = term->as<Fix>()) {
        auto [binder, body] = subst_binder(x->used, x->body, theta);
        return repad(mk_fix(binder, theta(x->defined), body, term->span));
    }
    return term;
}

}  // namespace

TermPtr apply_subst(const TermPtr& term, const Substitution& theta) {
    return subst_rec(term, theta);
}

Substitution sigma_hat(const std::vector<VarId>& vars, const std::vector<int>& sigma) {
    if (sigma.size() != vars.size()) {
        throw PlError(Err::VarArityMismatch, "integer function length differs from variable list");
    }
    Substitution theta;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        int j = sigma[i];
        if (j < 1 || static_cast<std::size_t>(j) > vars.size()) {
            throw PlError(Err::VarArityMismatch, "integer function value out of range");
        }
        theta.add(vars[i], vars[static_cast<std::size_t>(j) - 1]);
    }
    return theta;
}

namespace {

TermPtr instantiate_rec(const TermPtr& term,
                        const std::map<std::string, FragmentBinding>& bindings) {
    if (!term) return nullptr;
    if (const auto* f = term->as<Fragment>()) {
        auto it = bindings.find(f->name);
        if (it == bindings.end()) {
            throw PlError(Err::UnboundFragment, "fragment " + f->name + " has no binding",
                          term->span);
        }
        const FragmentBinding& binding = it->second;
        if (binding.vars.size() != f->vars.size()) {
            throw PlError(Err::VarArityMismatch,
                          "fragment " + f->name + " bound with wrong variable count", term->span);
        }
        Substitution rename;
        for (std::size_t i = 0; i < binding.vars.size(); ++i) {
            if (!same_kind(binding.vars[i], f->vars[i])) {
                throw PlError(Err::KindMismatch,
                              "fragment " + f->name + " binding variable " +
                                  binding.vars[i].name + " has the wrong kind",
                              term->span);
            }
            rename.add(binding.vars[i], f->vars[i]);
        }
        return apply_subst(binding.body, rename);
    }
    if (const auto* s = term->as<Seq>()) {
        return mk_seq(instantiate_rec(s->first, bindings), instantiate_rec(s->second, bindings),
                      term->span);
    }
    if (const auto* c = term->as<Cond>()) {
        return mk_cond(c->scrutinee, instantiate_rec(c->then_branch, bindings),
                       instantiate_rec(c->else_branch, bindings), term->span);
    }
    if (const auto* l = term->as<Local>()) {
        return mk_local(l->var, instantiate_rec(l->body, bindings), term->span);
    }
    if (const auto* d = term->as<ProcDef>()) {
        return mk_procdef(d->name, d->formals, instantiate_rec(d->body, bindings), term->span);
    }
    if (const auto* k = term->as<ProcCall>()) {
        return mk_proccall(k->callee, k->actuals, instantiate_rec(k->prefix, bindings),
                           term->span);
    }
    if (const auto* x = term->as<Fix>()) {
        return mk_fix(x->used, x->defined, instantiate_rec(x->body, bindings), term->span);
    }
    return term;
}

}  // namespace

TermPtr instantiate(const TermPtr& term,
                    const std::map<std::string, FragmentBinding>& bindings) {
    return instantiate_rec(term, bindings);
}

}  // namespace plstar
