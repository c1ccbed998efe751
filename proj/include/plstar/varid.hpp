#pragma once

#include <set>
#include <string>

#include "plstar/typesig.hpp"

namespace plstar {

// A program variable: data (with a sort) or procedure (with a signature).
// Identity within a term context is the name plus the kind category; the
// sort/signature travel along as metadata.
struct VarId {
    std::string name;
    bool is_proc = false;
    Sort sort = Sort::Int;  // data variables
    TypeSigPtr sig;         // procedure variables
    bool is_psi = false;

    bool operator==(const VarId& other) const {
        return name == other.name && is_proc == other.is_proc && is_psi == other.is_psi;
    }
    bool operator!=(const VarId& other) const { return !(*this == other); }
    bool operator<(const VarId& other) const {
        if (name != other.name) return name < other.name;
        if (is_proc != other.is_proc) return is_proc < other.is_proc;
        return is_psi < other.is_psi;
    }
};

using VarSet = std::set<VarId>;

VarId data_var(std::string name, Sort sort);
VarId proc_var(std::string name, TypeSigPtr sig);

// The distinguished side-effect variable. It never appears in variable lists;
// every fragment implicitly carries it as the trailing element.
const VarId& psi_var();

// Same kind category, and same sort / signature within it.
bool same_kind(const VarId& a, const VarId& b);

// base's kind with a name not in avoid: the base itself if unused, else the
// base name with the smallest unused numeric suffix.
VarId fresh_var(const VarId& base, const VarSet& avoid);

}  // namespace plstar
