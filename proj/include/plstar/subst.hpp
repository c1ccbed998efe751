#pragma once

#include <map>
#include <vector>

#include "plstar/term.hpp"

namespace plstar {

// A variable substitution: identity off its domain, fixes psi, maps only
// between variables of the same kind. The checked interface enforces kind
// preservation at insertion; raw() skips that so check_subst can report
// violations as diagnostics instead.
class Substitution {
public:
    Substitution() = default;

    static Substitution of(std::vector<std::pair<VarId, VarId>> pairs);
    static Substitution raw(std::vector<std::pair<VarId, VarId>> pairs);

    void add(const VarId& from, const VarId& to);  // throws on kind/psi violation

    const VarId& operator()(const VarId& v) const;
    bool maps(const VarId& v) const { return map_.count(v) != 0; }
    bool is_identity() const { return map_.empty(); }

    const std::map<VarId, VarId>& pairs() const { return map_; }

    // Images of every free variable of a set.
    VarSet image(const VarSet& vars) const;

    // this followed by other: x -> other(this(x)).
    Substitution then(const Substitution& other) const;

    // True when injective on its whole domain (a variable renaming).
    bool is_renaming() const;

private:
    std::map<VarId, VarId> map_;
};

// P with free occurrences replaced, bound variables renamed (base name plus
// smallest numeric suffix) exactly when a capture would occur.
TermPtr apply_subst(const TermPtr& term, const Substitution& theta);

// The substitution induced by an integer function over a variable list:
// x_i -> x_{sigma(i)} (1-based). sigma values must index the list.
Substitution sigma_hat(const std::vector<VarId>& vars, const std::vector<int>& sigma);

// Fragment instantiation: replace each Fragment node by its binding, renaming
// the binding's declared variables positionally onto the node's variables.
struct FragmentBinding {
    std::vector<VarId> vars;  // declared free-variable list of the body
    TermPtr body;
};

TermPtr instantiate(const TermPtr& term,
                    const std::map<std::string, FragmentBinding>& bindings);

}  // namespace plstar
