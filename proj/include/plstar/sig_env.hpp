#pragma once

#include <map>
#include <string>

#include "plstar/term.hpp"

namespace plstar {

// Declarations of identifiers whose kinds are known only from context: free
// variables of a fragment, plus the sorts of locally declared data names.
// Sidecar format, one entry per line:
//
//   f = "proc(in int, out int)"
//   w = "data bool"
//
class SigEnv {
public:
    void declare(VarId v);
    void declare(const std::string& name, const std::string& spec);

    const VarId* find(const std::string& name) const;
    bool empty() const { return decls_.empty(); }

    static SigEnv from_string(const std::string& text, const std::string& filename = "<sig>");
    static SigEnv from_file(const std::string& path);

    // Parses a declaration spec like "data int" or "proc(in int, out int)".
    static VarId parse_decl(const std::string& name, const std::string& spec);

    // Declarations covering every variable of a term, for round-trip tests.
    static SigEnv covering(const TermPtr& term);

private:
    std::map<std::string, VarId> decls_;
};

}  // namespace plstar
