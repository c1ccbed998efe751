#include "plstar/varid.hpp"

#include <cctype>

namespace plstar {

VarId data_var(std::string name, Sort sort) {
    VarId v;
    v.name = std::move(name);
    v.is_proc = false;
    v.sort = sort;
    return v;
}

VarId proc_var(std::string name, TypeSigPtr sig) {
    VarId v;
    v.name = std::move(name);
    v.is_proc = true;
    v.sig = std::move(sig);
    return v;
}

const VarId& psi_var() {
    static const VarId psi = [] {
        VarId v = data_var("psi", Sort::Universal);
        v.is_psi = true;
        return v;
    }();
    return psi;
}

bool same_kind(const VarId& a, const VarId& b) {
    if (a.is_proc != b.is_proc) return false;
    if (a.is_psi != b.is_psi) return false;
    if (a.is_proc) return typesig_equal(a.sig, b.sig);
    return a.sort == b.sort;
}

VarId fresh_var(const VarId& base, const VarSet& avoid) {
    auto taken = [&](const std::string& name) {
        for (const auto& v : avoid) {
            if (v.name == name) return true;
        }
        return false;
    };
    if (!taken(base.name)) return base;
    for (long k = 1;; ++k) {
        std::string candidate = base.name + std::to_string(k);
        if (!taken(candidate)) {
            VarId v = base;
            v.name = candidate;
            return v;
        }
    }
}

}  // namespace plstar
