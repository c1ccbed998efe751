#pragma once

#include <string>

#include "plstar/sig_env.hpp"
#include "plstar/term.hpp"

namespace plstar {

// Parses PL textual syntax. Free identifiers and locally declared data names
// take their kinds from sig_env; callee names falling through to the builtin
// registry become Prim nodes. Throws PlError with a span on the first error.
TermPtr parse_program(const std::string& text, const SigEnv& sig_env,
                      const std::string& filename = "<input>");

struct PrintOptions {
    // Render fix u as v in P end as the textual substitution form P with
    // u replaced by v.
    bool mu_as_subst = false;
};

// Canonical formatting: two-space indent, one statement per line, var runs
// collapsed. parse(print(t)) is structurally t; print(parse(s)) is a fixed
// point after one pass.
std::string print_program(const TermPtr& term, const PrintOptions& options = {});

}  // namespace plstar
