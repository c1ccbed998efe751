#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plstar/term.hpp"
#include "plstar/value.hpp"

namespace plstar {

// A builtin takes the values of its in-position arguments (in argument
// order) and yields values for its out-position arguments, or nothing for
// bottom. enumeration_mode turns range overflow into bottom instead of an
// error.
struct BuiltinCtx {
    bool enumeration_mode = false;
    const Domain* domain = nullptr;
};

using BuiltinFn =
    std::function<std::optional<std::vector<Value>>(const std::vector<Value>&, const BuiltinCtx&)>;

struct Builtin {
    std::string name;
    TypeSigPtr sig;
    BuiltinFn fn;
    std::optional<std::string> psi_transformer;
};

// Store transformers model declared side effects: the per-variable image of
// the global store under one primitive execution.
using StoreTransformer = std::function<Value(const Value&)>;

class BuiltinRegistry {
public:
    // Ships with the standard primitives already registered.
    static BuiltinRegistry& instance();

    void register_builtin(std::string name, TypeSigPtr sig, BuiltinFn fn,
                          std::optional<std::string> psi_transformer = std::nullopt);
    void register_transformer(std::string id, StoreTransformer fn);

    const Builtin* find(const std::string& name) const;
    const StoreTransformer* find_transformer(const std::string& id) const;

    // EffectSummary of a builtin applied to concrete actuals.
    EffectSummary effect_for(const std::string& name, const std::vector<VarId>& actuals) const;

    std::vector<std::string> names() const;

private:
    BuiltinRegistry();
    std::map<std::string, Builtin> builtins_;
    std::map<std::string, StoreTransformer> transformers_;
};

// Convenience: a Prim node for a registered builtin over the given actuals.
TermPtr builtin_prim(const std::string& name, std::vector<VarId> actuals, SourceSpan span = {});

// The proc VarId a Prim node implicitly references ("0", "=", ... are input
// procedure variables bound by the registry).
VarId prim_ref_var(const std::string& name);

}  // namespace plstar
