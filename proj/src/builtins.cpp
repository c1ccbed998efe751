#include "plstar/builtins.hpp"

#include <algorithm>

#include "plstar/diagnostics.hpp"

namespace plstar {

namespace {

using Args = std::vector<Value>;
using Out = std::optional<std::vector<Value>>;

Out bottom() { return std::nullopt; }

// Direct evaluation fails loudly on machine overflow; enumeration clips to
// the domain's int range and yields bottom instead.
Out int_result(std::int64_t v, bool overflowed, const BuiltinCtx& ctx) {
    if (ctx.enumeration_mode) {
        if (overflowed || (ctx.domain && !ctx.domain->contains(Sort::Int, Value::integer(v)))) {
            return bottom();
        }
        return Args{Value::integer(v)};
    }
    if (overflowed) throw PlError(Err::ExecutionError, "integer overflow");
    return Args{Value::integer(v)};
}

bool undef_in(const Args& args) {
    return std::any_of(args.begin(), args.end(), [](const Value& v) { return v.is_undef(); });
}

Out oob(const BuiltinCtx& ctx, const std::string& what) {
    if (ctx.enumeration_mode) return bottom();
    throw PlError(Err::ExecutionError, what);
}

TypeSigPtr sig_of(std::initializer_list<ArgSig> args) {
    return TypeSig::make(std::vector<ArgSig>(args));
}

}  // namespace

BuiltinRegistry& BuiltinRegistry::instance() {
    static BuiltinRegistry registry;
    return registry;
}

void BuiltinRegistry::register_builtin(std::string name, TypeSigPtr sig, BuiltinFn fn,
                                       std::optional<std::string> psi_transformer) {
    if (builtins_.count(name)) {
        throw PlError(Err::DuplicateBuiltin, "builtin " + name + " already registered");
    }
    Builtin b;
    b.name = name;
    b.sig = std::move(sig);
    b.fn = std::move(fn);
    b.psi_transformer = std::move(psi_transformer);
    builtins_.emplace(std::move(name), std::move(b));
}

void BuiltinRegistry::register_transformer(std::string id, StoreTransformer fn) {
    if (transformers_.count(id)) {
        throw PlError(Err::DuplicateBuiltin, "store transformer " + id + " already registered");
    }
    transformers_.emplace(std::move(id), std::move(fn));
}

const Builtin* BuiltinRegistry::find(const std::string& name) const {
    auto it = builtins_.find(name);
    return it == builtins_.end() ? nullptr : &it->second;
}

const StoreTransformer* BuiltinRegistry::find_transformer(const std::string& id) const {
    auto it = transformers_.find(id);
    return it == transformers_.end() ? nullptr : &it->second;
}

EffectSummary BuiltinRegistry::effect_for(const std::string& name,
                                          const std::vector<VarId>& actuals) const {
    const Builtin* b = find(name);
    if (!b) throw PlError(Err::UnboundPrimitive, "unknown builtin " + name);
    if (b->sig->arity() != actuals.size()) {
        throw PlError(Err::VarArityMismatch, "builtin " + name + " expects " +
                                                 std::to_string(b->sig->arity()) + " arguments");
    }
    EffectSummary eff;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const ArgSig& a = b->sig->args[i];
        if (a.is_proc != actuals[i].is_proc ||
            (!a.is_proc && a.sort != actuals[i].sort && actuals[i].sort != Sort::Universal)) {
            throw PlError(Err::KindError, "argument " + std::to_string(i + 1) + " of builtin " +
                                              name + " has the wrong kind");
        }
        if (argio_in(a.io)) eff.reads.insert(actuals[i]);
        if (argio_out(a.io)) eff.writes.insert(actuals[i]);
    }
    eff.psi_transformer = b->psi_transformer;
    return eff;
}

std::vector<std::string> BuiltinRegistry::names() const {
    std::vector<std::string> out;
    for (const auto& [name, b] : builtins_) {
        (void)b;
        out.push_back(name);
    }
    return out;
}

TermPtr builtin_prim(const std::string& name, std::vector<VarId> actuals, SourceSpan span) {
    EffectSummary eff = BuiltinRegistry::instance().effect_for(name, actuals);
    return mk_prim(name, std::move(actuals), std::move(eff), span);
}

VarId prim_ref_var(const std::string& name) {
    const Builtin* b = BuiltinRegistry::instance().find(name);
    return proc_var(name, b ? b->sig : TypeSig::make({}));
}

BuiltinRegistry::BuiltinRegistry() {
    const Sort I = Sort::Int;
    const Sort B = Sort::Bool;
    const Sort A = Sort::IntArray;

    register_builtin("0", sig_of({data_arg(ArgIo::Out, I)}),
                     [](const Args&, const BuiltinCtx&) -> Out {
                         return Args{Value::integer(0)};
                     });
    register_builtin("1", sig_of({data_arg(ArgIo::Out, I)}),
                     [](const Args&, const BuiltinCtx&) -> Out {
                         return Args{Value::integer(1)};
                     });
    register_builtin("=", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::In, I),
                                  data_arg(ArgIo::Out, B)}),
                     [](const Args& in, const BuiltinCtx&) -> Out {
                         if (undef_in(in)) return bottom();
                         return Args{Value::boolean(in[0].as_int() == in[1].as_int())};
                     });
    register_builtin("lt", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::In, I),
                                   data_arg(ArgIo::Out, B)}),
                     [](const Args& in, const BuiltinCtx&) -> Out {
                         if (undef_in(in)) return bottom();
                         return Args{Value::boolean(in[0].as_int() < in[1].as_int())};
                     });
    register_builtin("-", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::In, I),
                                  data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         std::int64_t r = 0;
                         bool ovf = __builtin_sub_overflow(in[0].as_int(), in[1].as_int(), &r);
                         return int_result(r, ovf, ctx);
                     });
    register_builtin("*", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::In, I),
                                  data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         std::int64_t r = 0;
                         bool ovf = __builtin_mul_overflow(in[0].as_int(), in[1].as_int(), &r);
                         return int_result(r, ovf, ctx);
                     });
    register_builtin("+", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::In, I),
                                  data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         std::int64_t r = 0;
                         bool ovf = __builtin_add_overflow(in[0].as_int(), in[1].as_int(), &r);
                         return int_result(r, ovf, ctx);
                     });
    register_builtin("inc", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         std::int64_t r = 0;
                         bool ovf = __builtin_add_overflow(in[0].as_int(), std::int64_t{1}, &r);
                         return int_result(r, ovf, ctx);
                     });
    register_builtin("id", sig_of({data_arg(ArgIo::In, I), data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx&) -> Out {
                         if (undef_in(in)) return bottom();
                         return Args{in[0]};
                     });
    register_builtin("get", sig_of({data_arg(ArgIo::In, A), data_arg(ArgIo::In, I),
                                    data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         const auto& xs = in[0].as_array();
                         std::int64_t i = in[1].as_int();
                         if (i < 1 || static_cast<std::size_t>(i) > xs.size()) {
                             return oob(ctx, "get index out of range");
                         }
                         return Args{Value::integer(xs[static_cast<std::size_t>(i) - 1])};
                     });
    register_builtin("set", sig_of({data_arg(ArgIo::InOut, A), data_arg(ArgIo::In, I),
                                    data_arg(ArgIo::In, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         auto xs = in[0].as_array();
                         std::int64_t i = in[1].as_int();
                         if (i < 1 || static_cast<std::size_t>(i) > xs.size()) {
                             return oob(ctx, "set index out of range");
                         }
                         xs[static_cast<std::size_t>(i) - 1] = in[2].as_int();
                         return Args{Value::array(std::move(xs))};
                     });
    register_builtin("len", sig_of({data_arg(ArgIo::In, A), data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx&) -> Out {
                         if (undef_in(in)) return bottom();
                         return Args{Value::integer(static_cast<std::int64_t>(in[0].as_array().size()))};
                     });
    register_builtin("Update1", sig_of({data_arg(ArgIo::InOut, A), data_arg(ArgIo::In, I)}),
                     [](const Args& in, const BuiltinCtx& ctx) -> Out {
                         if (undef_in(in)) return bottom();
                         auto xs = in[0].as_array();
                         std::int64_t n = in[1].as_int();
                         if (n < 1 || static_cast<std::size_t>(n) > xs.size()) {
                             return oob(ctx, "Update1 index out of range");
                         }
                         xs[static_cast<std::size_t>(n) - 1] += 1;
                         return Args{Value::array(std::move(xs))};
                     });
    // Hoare partition, one-based bounds. Degenerate bounds leave the array
    // untouched and report q = p, keeping the primitive total.
    register_builtin("Partition",
                     sig_of({data_arg(ArgIo::InOut, A), data_arg(ArgIo::In, I),
                             data_arg(ArgIo::In, I), data_arg(ArgIo::Out, I)}),
                     [](const Args& in, const BuiltinCtx&) -> Out {
                         if (undef_in(in)) return bottom();
                         auto xs = in[0].as_array();
                         std::int64_t p = in[1].as_int();
                         std::int64_t r = in[2].as_int();
                         std::int64_t len = static_cast<std::int64_t>(xs.size());
                         if (!(1 <= p && p < r && r <= len)) {
                             return Args{Value::array(std::move(xs)), Value::integer(p)};
                         }
                         auto at = [&](std::int64_t i) -> std::int64_t& {
                             return xs[static_cast<std::size_t>(i) - 1];
                         };
                         std::int64_t pivot = at(p);
                         std::int64_t i = p - 1;
                         std::int64_t j = r + 1;
                         while (true) {
                             do { --j; } while (at(j) > pivot);
                             do { ++i; } while (at(i) < pivot);
                             if (i < j) {
                                 std::swap(at(i), at(j));
                             } else {
                                 return Args{Value::array(std::move(xs)), Value::integer(j)};
                             }
                         }
                     });

    register_transformer("noop", [](const Value& v) { return v; });
}

}  // namespace plstar
