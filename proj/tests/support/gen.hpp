#pragma once

#include <random>
#include <vector>

#include "plstar/analysis.hpp"
#include "plstar/builtins.hpp"
#include "plstar/subst.hpp"

// Seeded generator of well-formed, precondition-clean, fragment-free terms
// over int/bool data and small procedure signatures, plus random legal
// substitutions over their free variables.
namespace plstar::testing {

inline void ensure_test_builtins() {
    static bool done = [] {
        BuiltinRegistry& reg = BuiltinRegistry::instance();
        reg.register_transformer("bump", [](const Value& v) {
            if (v.is_int()) return Value::integer(v.as_int() + 1);
            return v;
        });
        reg.register_builtin("touch", TypeSig::make({data_arg(ArgIo::InOut, Sort::Int)}),
                             [](const std::vector<Value>& in, const BuiltinCtx&)
                                 -> std::optional<std::vector<Value>> {
                                 return std::vector<Value>{in[0]};
                             },
                             "bump");
        return true;
    }();
    (void)done;
}

class TermGen {
public:
    explicit TermGen(std::uint64_t seed) : rng_(seed) {}

    struct Generated {
        TermPtr term;
        std::vector<VarId> free_ints;   // inputs with environment-given values
        std::vector<VarId> free_bools;
    };

    Generated generate() {
        next_id_ = 0;
        Ctx ctx;
        int ints = 2 + pick(2);
        for (int i = 0; i < ints; ++i) {
            VarId v = fresh(Sort::Int);
            ctx.defined.push_back(v);
            ctx.in_scope.push_back(v);
        }
        VarId w = fresh(Sort::Bool);
        ctx.defined.push_back(w);
        ctx.in_scope.push_back(w);
        Generated out;
        out.term = block(ctx, 2);
        for (const auto& v : ctx.in_scope) {
            if (v.sort == Sort::Bool) {
                out.free_bools.push_back(v);
            } else {
                out.free_ints.push_back(v);
            }
        }
        return out;
    }

    // A substitution over the term's free variables: targets drawn from other
    // free variables of the same kind or fresh names.
    Substitution random_subst(const TermPtr& term) {
        VarSet fv = free_vars(term);
        std::vector<VarId> free(fv.begin(), fv.end());
        Substitution theta;
        if (free.empty()) return theta;
        int moves = 1 + pick(3);
        for (int i = 0; i < moves; ++i) {
            const VarId& from = free[static_cast<std::size_t>(pick(static_cast<int>(free.size())))];
            std::vector<VarId> targets;
            for (const auto& v : free) {
                if (v != from && same_kind(v, from)) targets.push_back(v);
            }
            VarId renamed = from;
            renamed.name = "s" + std::to_string(next_id_++);
            targets.push_back(renamed);
            const VarId& to =
                targets[static_cast<std::size_t>(pick(static_cast<int>(targets.size())))];
            theta.add(from, to);
        }
        return theta;
    }

    int pick(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

private:
    struct Ctx {
        std::vector<VarId> defined;         // data variables safe to read
        std::vector<VarId> in_scope;        // all data variables writable here
        std::vector<VarId> procs;           // defined procedures, (in int, out int)
        std::vector<VarId> procs_unusable;  // fix-defined, not re-called
    };

    VarId fresh(Sort sort) {
        std::string stem = sort == Sort::Bool ? "w" : "v";
        return data_var(stem + std::to_string(next_id_++), sort);
    }

    VarId pick_defined(Ctx& ctx, Sort sort) {
        std::vector<VarId> candidates;
        for (const auto& v : ctx.defined) {
            if (v.sort == sort) candidates.push_back(v);
        }
        return candidates[static_cast<std::size_t>(pick(static_cast<int>(candidates.size())))];
    }

    bool has_defined(const Ctx& ctx, Sort sort) {
        for (const auto& v : ctx.defined) {
            if (v.sort == sort) return true;
        }
        return false;
    }

    bool has_writable(const Ctx& ctx, Sort sort) {
        for (const auto& v : ctx.in_scope) {
            if (v.sort == sort) return true;
        }
        return false;
    }

    VarId pick_target(Ctx& ctx, Sort sort) {
        std::vector<VarId> candidates;
        for (const auto& v : ctx.in_scope) {
            if (v.sort == sort) candidates.push_back(v);
        }
        VarId v = candidates[static_cast<std::size_t>(pick(static_cast<int>(candidates.size())))];
        bool already = false;
        for (const auto& d : ctx.defined) already |= d == v;
        if (!already) ctx.defined.push_back(v);
        return v;
    }

    TermPtr prim_stmt(Ctx& ctx) {
        bool bool_target = has_writable(ctx, Sort::Bool);
        bool int_source = has_defined(ctx, Sort::Int);
        switch (pick(bool_target && int_source ? 6 : (int_source ? 4 : 2))) {
            case 0: return builtin_prim("0", {pick_target(ctx, Sort::Int)});
            case 1: return builtin_prim("1", {pick_target(ctx, Sort::Int)});
            case 2: {
                VarId a = pick_defined(ctx, Sort::Int);
                return builtin_prim("inc", {a, pick_target(ctx, Sort::Int)});
            }
            case 3: {
                VarId a = pick_defined(ctx, Sort::Int);
                VarId b = pick_defined(ctx, Sort::Int);
                return builtin_prim("-", {a, b, pick_target(ctx, Sort::Int)});
            }
            case 4: {
                VarId a = pick_defined(ctx, Sort::Int);
                VarId b = pick_defined(ctx, Sort::Int);
                return builtin_prim("lt", {a, b, pick_target(ctx, Sort::Bool)});
            }
            default: {
                VarId a = pick_defined(ctx, Sort::Int);
                VarId b = pick_defined(ctx, Sort::Int);
                return builtin_prim("=", {a, b, pick_target(ctx, Sort::Bool)});
            }
        }
    }

    TermPtr procdef_stmt(Ctx& ctx) {
        TypeSigPtr sig =
            TypeSig::make({data_arg(ArgIo::In, Sort::Int), data_arg(ArgIo::Out, Sort::Int)});
        VarId p = proc_var("p" + std::to_string(next_id_++), sig);
        VarId a = fresh(Sort::Int);
        VarId b = fresh(Sort::Int);
        Ctx inner;
        inner.defined = {a};
        inner.in_scope = {a, b};
        TermPtr body = nullptr;
        int extras = pick(2);
        for (int i = 0; i < extras; ++i) {
            TermPtr s = prim_stmt(inner);
            body = body ? mk_seq(body, s) : s;
        }
        TermPtr write_out = builtin_prim(pick(2) ? "inc" : "id", {a, b});
        body = body ? mk_seq(body, write_out) : write_out;
        ctx.procs.push_back(p);
        return mk_procdef(p, {a, b}, body);
    }

    TermPtr call_stmt(Ctx& ctx) {
        const VarId& p =
            ctx.procs[static_cast<std::size_t>(pick(static_cast<int>(ctx.procs.size())))];
        VarId in = pick_defined(ctx, Sort::Int);
        VarId out = pick_target(ctx, Sort::Int);
        return mk_proccall(p, {in, out});
    }

    TermPtr fix_stmt(Ctx& ctx) {
        TypeSigPtr sig = TypeSig::make(
            {data_arg(ArgIo::In, Sort::Int), data_arg(ArgIo::In, Sort::Bool),
             data_arg(ArgIo::Out, Sort::Int)});
        VarId p = proc_var("p" + std::to_string(next_id_++), sig);
        VarId u = proc_var("u" + std::to_string(next_id_++), sig);
        VarId a = fresh(Sort::Int);
        VarId w = fresh(Sort::Bool);
        VarId b = fresh(Sort::Int);
        // p(a, w, b): if w then b := a else b := p'(a, w, b) recursion stub
        TermPtr recurse = mk_proccall(u, {a, w, b});
        TermPtr base = builtin_prim("id", {a, b});
        TermPtr body = mk_cond(w, base, recurse);
        TermPtr def = mk_procdef(p, {a, w, b}, body);
        ctx.procs_unusable.push_back(p);
        return mk_fix(u, p, def);
    }

    TermPtr stmt(Ctx& ctx, int depth) {
        int roll = pick(10);
        if (roll < 5) return prim_stmt(ctx);
        if (roll < 6 && depth > 0 && has_defined(ctx, Sort::Bool)) {
            VarId w = pick_defined(ctx, Sort::Bool);
            Ctx then_ctx = ctx;
            Ctx else_ctx = ctx;
            TermPtr then_branch = block(then_ctx, depth - 1);
            TermPtr else_branch = pick(4) == 0 ? nullptr : block(else_ctx, depth - 1);
            // variables defined on both paths stay defined
            if (else_branch) {
                std::vector<VarId> both;
                for (const auto& v : then_ctx.defined) {
                    for (const auto& u : else_ctx.defined) {
                        if (u == v) both.push_back(v);
                    }
                }
                ctx.defined = both;
            }
            return mk_cond(w, then_branch, else_branch);
        }
        if (roll < 8) return procdef_stmt(ctx);
        if (roll < 9 && !ctx.procs.empty()) return call_stmt(ctx);
        if (roll == 9 && depth > 0) return fix_stmt(ctx);
        return prim_stmt(ctx);
    }

    TermPtr block(Ctx& ctx, int depth) {
        int count = 1 + pick(3);
        TermPtr out = nullptr;
        for (int i = 0; i < count; ++i) {
            TermPtr s = stmt(ctx, depth);
            out = out ? mk_seq(out, s) : s;
        }
        // occasionally end with a local scope
        if (depth > 0 && pick(3) == 0) {
            VarId local = fresh(pick(4) == 0 ? Sort::Bool : Sort::Int);
            Ctx inner = ctx;
            inner.in_scope.push_back(local);
            TermPtr body = block(inner, depth - 1);
            out = out ? mk_seq(out, mk_local(local, body)) : mk_local(local, body);
        }
        return out;
    }

    std::mt19937_64 rng_;
    int next_id_ = 0;
};

}  // namespace plstar::testing
