#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "plstar/diagnostics.hpp"
#include "plstar/term.hpp"

namespace plstar {

// Minimal s-expressions: atoms and lists. Atoms with whitespace, parens or
// quotes round-trip through double quoting.
struct Sexpr {
    std::variant<std::string, std::vector<Sexpr>> rep;
    SourceSpan span;

    bool is_atom() const { return std::holds_alternative<std::string>(rep); }
    bool is_list() const { return !is_atom(); }
    const std::string& atom() const { return std::get<std::string>(rep); }
    const std::vector<Sexpr>& items() const { return std::get<std::vector<Sexpr>>(rep); }

    static Sexpr atom_of(std::string s) { return Sexpr{std::move(s), {}}; }
    static Sexpr list_of(std::vector<Sexpr> items) { return Sexpr{std::move(items), {}}; }

    std::string to_string() const;
    // Indented rendering for files.
    std::string pretty(int indent = 0) const;
};

Sexpr parse_sexpr(const std::string& text, const std::string& what = "s-expression");
std::vector<Sexpr> parse_sexprs(const std::string& text,
                                const std::string& what = "s-expression");

// Resolves a bare variable name to a VarId during deserialization.
using VarResolver = std::function<VarId(const std::string& name, const SourceSpan& span)>;

Sexpr term_to_sexpr(const TermPtr& term);
TermPtr term_from_sexpr(const Sexpr& sx, const VarResolver& resolve);

}  // namespace plstar
