#include "plstar/relations.hpp"

#include <algorithm>
#include <cctype>

namespace plstar {

namespace {

RelExprPtr make(RelExpr e) { return std::make_shared<const RelExpr>(std::move(e)); }

}  // namespace

RelExprPtr rel_true() {
    RelExpr e;
    e.kind = RelExpr::Kind::True;
    return make(std::move(e));
}

RelExprPtr rel_atom(std::string name, std::vector<std::string> vars,
                    std::vector<IntParam> int_args) {
    RelExpr e;
    e.kind = RelExpr::Kind::Atom;
    e.name = std::move(name);
    e.arg_vars = std::move(vars);
    e.int_args = std::move(int_args);
    return make(std::move(e));
}

RelExprPtr rel_ref(std::string name, std::vector<std::string> vars,
                   std::vector<IntParam> int_args) {
    RelExpr e;
    e.kind = RelExpr::Kind::Ref;
    e.name = std::move(name);
    e.arg_vars = std::move(vars);
    e.int_args = std::move(int_args);
    return make(std::move(e));
}

RelExprPtr rel_and(std::vector<RelExprPtr> children) {
    RelExpr e;
    e.kind = RelExpr::Kind::And;
    e.children = std::move(children);
    return make(std::move(e));
}

RelExprPtr rel_or(std::vector<RelExprPtr> children) {
    RelExpr e;
    e.kind = RelExpr::Kind::Or;
    e.children = std::move(children);
    return make(std::move(e));
}

RelExprPtr rel_not(RelExprPtr child) {
    RelExpr e;
    e.kind = RelExpr::Kind::Not;
    e.children = {std::move(child)};
    return make(std::move(e));
}

RelExprPtr rel_implies(RelExprPtr lhs, RelExprPtr rhs) {
    RelExpr e;
    e.kind = RelExpr::Kind::Implies;
    e.children = {std::move(lhs), std::move(rhs)};
    return make(std::move(e));
}

RelExprPtr rel_exists(std::string var, Sort sort, RelExprPtr body) {
    RelExpr e;
    e.kind = RelExpr::Kind::Exists;
    e.name = std::move(var);
    e.bound_sort = sort;
    e.children = {std::move(body)};
    return make(std::move(e));
}

RelExprPtr rel_proclift(std::string proc, std::vector<std::string> tuple, RelExprPtr body) {
    RelExpr e;
    e.kind = RelExpr::Kind::ProcLift;
    e.name = std::move(proc);
    e.arg_vars = std::move(tuple);
    e.children = {std::move(body)};
    return make(std::move(e));
}

RelExprPtr rel_forallk(std::string var, long lo, long hi, RelExprPtr body) {
    RelExpr e;
    e.kind = RelExpr::Kind::ForallK;
    e.name = std::move(var);
    e.k_lo = lo;
    e.k_hi = hi;
    e.children = {std::move(body)};
    return make(std::move(e));
}

namespace {

bool int_param_equal(const IntParam& a, const IntParam& b) {
    return a.var == b.var && a.offset == b.offset;
}

}  // namespace

bool rel_equal(const RelExprPtr& a, const RelExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->name != b->name || a->arg_vars != b->arg_vars) return false;
    if (a->int_args.size() != b->int_args.size()) return false;
    for (std::size_t i = 0; i < a->int_args.size(); ++i) {
        if (!int_param_equal(a->int_args[i], b->int_args[i])) return false;
    }
    if (a->bound_sort != b->bound_sort || a->k_lo != b->k_lo || a->k_hi != b->k_hi) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!rel_equal(a->children[i], b->children[i])) return false;
    }
    return true;
}

RelExprPtr rel_rename(const RelExprPtr& rel, const std::map<std::string, std::string>& names) {
    if (!rel || names.empty()) return rel;
    auto ren = [&](const std::string& n) {
        auto it = names.find(n);
        return it == names.end() ? n : it->second;
    };
    RelExpr e = *rel;
    if (e.kind == RelExpr::Kind::ProcLift) {
        e.name = ren(e.name);
        // lift-bound tuple names shadow outer names
        std::map<std::string, std::string> inner = names;
        for (const auto& bound : rel->arg_vars) inner.erase(bound);
        e.children = {rel_rename(rel->children[0], inner)};
        return make(std::move(e));
    }
    if (e.kind == RelExpr::Kind::Exists || e.kind == RelExpr::Kind::ForallK) {
        std::map<std::string, std::string> inner = names;
        inner.erase(rel->name);
        e.children = {rel_rename(rel->children[0], inner)};
        return make(std::move(e));
    }
    for (auto& v : e.arg_vars) v = ren(v);
    for (auto& c : e.children) c = rel_rename(c, names);
    return make(std::move(e));
}

namespace {

Sexpr int_param_to_sexpr(const IntParam& p) {
    if (p.var.empty()) return Sexpr::atom_of(std::to_string(p.offset));
    if (p.offset == 0) return Sexpr::atom_of(p.var);
    return Sexpr::list_of({Sexpr::atom_of("+"), Sexpr::atom_of(p.var),
                           Sexpr::atom_of(std::to_string(p.offset))});
}

bool looks_numeric(const std::string& a) {
    if (a.empty()) return false;
    if (std::isdigit(static_cast<unsigned char>(a[0]))) return true;
    return (a[0] == '-') && a.size() > 1 && std::isdigit(static_cast<unsigned char>(a[1]));
}

IntParam int_param_from_sexpr(const Sexpr& sx) {
    IntParam p;
    if (sx.is_atom()) {
        if (looks_numeric(sx.atom())) {
            p.offset = std::stol(sx.atom());
        } else {
            p.var = sx.atom();
        }
        return p;
    }
    const auto& xs = sx.items();
    if (xs.size() == 3 && xs[0].is_atom() && xs[0].atom() == "+" && xs[1].is_atom() &&
        xs[2].is_atom()) {
        p.var = xs[1].atom();
        p.offset = std::stol(xs[2].atom());
        return p;
    }
    throw PlError(Err::SyntaxError, "bad integer parameter " + sx.to_string(), sx.span);
}

}  // namespace

Sexpr rel_to_sexpr(const RelExprPtr& rel) {
    if (!rel) return Sexpr::list_of({Sexpr::atom_of("true")});
    switch (rel->kind) {
        case RelExpr::Kind::True:
            return Sexpr::list_of({Sexpr::atom_of("true")});
        case RelExpr::Kind::Atom:
        case RelExpr::Kind::Ref: {
            std::vector<Sexpr> items = {
                Sexpr::atom_of(rel->kind == RelExpr::Kind::Atom ? "atom" : "ref"),
                Sexpr::atom_of(rel->name)};
            for (const auto& v : rel->arg_vars) items.push_back(Sexpr::atom_of(v));
            for (const auto& p : rel->int_args) items.push_back(int_param_to_sexpr(p));
            return Sexpr::list_of(std::move(items));
        }
        case RelExpr::Kind::And:
        case RelExpr::Kind::Or:
        case RelExpr::Kind::Not:
        case RelExpr::Kind::Implies: {
            const char* head =
                rel->kind == RelExpr::Kind::And
                    ? "and"
                    : rel->kind == RelExpr::Kind::Or
                          ? "or"
                          : rel->kind == RelExpr::Kind::Not ? "not" : "implies";
            std::vector<Sexpr> items = {Sexpr::atom_of(head)};
            for (const auto& c : rel->children) items.push_back(rel_to_sexpr(c));
            return Sexpr::list_of(std::move(items));
        }
        case RelExpr::Kind::Exists:
            return Sexpr::list_of({Sexpr::atom_of("exists"), Sexpr::atom_of(rel->name),
                                   Sexpr::atom_of(sort_name(rel->bound_sort)),
                                   rel_to_sexpr(rel->children[0])});
        case RelExpr::Kind::ProcLift: {
            std::vector<Sexpr> tuple;
            for (const auto& v : rel->arg_vars) tuple.push_back(Sexpr::atom_of(v));
            return Sexpr::list_of({Sexpr::atom_of("proclift"), Sexpr::atom_of(rel->name),
                                   Sexpr::list_of(std::move(tuple)),
                                   rel_to_sexpr(rel->children[0])});
        }
        case RelExpr::Kind::ForallK:
            return Sexpr::list_of({Sexpr::atom_of("forallk"), Sexpr::atom_of(rel->name),
                                   Sexpr::atom_of(std::to_string(rel->k_lo)),
                                   Sexpr::atom_of(std::to_string(rel->k_hi)),
                                   rel_to_sexpr(rel->children[0])});
    }
    return rel_true();
}

std::string rel_to_string(const RelExprPtr& rel) { return rel_to_sexpr(rel).to_string(); }

RelExprPtr rel_from_sexpr(const Sexpr& sx) {
    if (!sx.is_list() || sx.items().empty() || !sx.items()[0].is_atom()) {
        throw PlError(Err::SyntaxError, "bad relation expression " + sx.to_string(), sx.span);
    }
    const auto& xs = sx.items();
    const std::string& head = xs[0].atom();
    if (head == "true") return rel_true();
    if (head == "atom" || head == "ref") {
        if (xs.size() < 2 || !xs[1].is_atom()) {
            throw PlError(Err::SyntaxError, "bad relation " + sx.to_string(), sx.span);
        }
        std::vector<std::string> vars;
        std::vector<IntParam> ints;
        for (std::size_t i = 2; i < xs.size(); ++i) {
            if (xs[i].is_atom() && !looks_numeric(xs[i].atom()) && ints.empty()) {
                vars.push_back(xs[i].atom());
            } else {
                ints.push_back(int_param_from_sexpr(xs[i]));
            }
        }
        return head == "atom" ? rel_atom(xs[1].atom(), std::move(vars), std::move(ints))
                              : rel_ref(xs[1].atom(), std::move(vars), std::move(ints));
    }
    if (head == "and" || head == "or") {
        std::vector<RelExprPtr> children;
        for (std::size_t i = 1; i < xs.size(); ++i) children.push_back(rel_from_sexpr(xs[i]));
        return head == "and" ? rel_and(std::move(children)) : rel_or(std::move(children));
    }
    if (head == "not" && xs.size() == 2) return rel_not(rel_from_sexpr(xs[1]));
    if (head == "implies" && xs.size() == 3) {
        return rel_implies(rel_from_sexpr(xs[1]), rel_from_sexpr(xs[2]));
    }
    if (head == "exists" && xs.size() == 4 && xs[1].is_atom() && xs[2].is_atom()) {
        Sort sort;
        if (!sort_from_name(xs[2].atom(), sort)) {
            throw PlError(Err::SyntaxError, "bad sort in exists", xs[2].span);
        }
        return rel_exists(xs[1].atom(), sort, rel_from_sexpr(xs[3]));
    }
    if (head == "proclift" && xs.size() == 4 && xs[1].is_atom() && xs[2].is_list()) {
        std::vector<std::string> tuple;
        for (const auto& t : xs[2].items()) tuple.push_back(t.atom());
        return rel_proclift(xs[1].atom(), std::move(tuple), rel_from_sexpr(xs[3]));
    }
    if (head == "forallk" && xs.size() == 5 && xs[1].is_atom()) {
        return rel_forallk(xs[1].atom(), std::stol(xs[2].atom()), std::stol(xs[3].atom()),
                           rel_from_sexpr(xs[4]));
    }
    throw PlError(Err::SyntaxError, "unknown relation form " + head, sx.span);
}

void RelLibrary::define_atom(std::string name, RelParamKinds kinds, AtomFn fn) {
    atoms_.insert_or_assign(std::move(name), AtomDef{std::move(kinds), std::move(fn)});
}

void RelLibrary::define(std::string name, std::vector<std::string> formals,
                        std::vector<std::string> int_formals, RelExprPtr body) {
    defs_.insert_or_assign(std::move(name),
                           Def{std::move(formals), std::move(int_formals), std::move(body)});
}

bool RelLibrary::has(const std::string& name) const {
    return atoms_.count(name) || defs_.count(name);
}

const RelExprPtr* RelLibrary::find_def(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second.body;
}

const RelLibrary::Def* RelLibrary::find_def_full(const std::string& name) const {
    auto it = defs_.find(name);
    return it == defs_.end() ? nullptr : &it->second;
}

const RelLibrary::AtomDef* RelLibrary::find_atom(const std::string& name) const {
    auto it = atoms_.find(name);
    return it == atoms_.end() ? nullptr : &it->second;
}

namespace {

std::int64_t as_int(const Value& v) { return v.as_int(); }

bool both_int(const DataSem& a) { return a.init.is_int() && a.fin.is_int(); }

// Sorted over valid one-based positions lo..hi of the final array.
bool sorted_range(const DataSem& a, std::int64_t lo, std::int64_t hi) {
    if (!a.fin.is_array()) return false;
    const auto& xs = a.fin.as_array();
    std::int64_t n = static_cast<std::int64_t>(xs.size());
    lo = std::max<std::int64_t>(lo, 1);
    hi = std::min(hi, n);
    for (std::int64_t i = lo; i < hi; ++i) {
        if (xs[static_cast<std::size_t>(i) - 1] > xs[static_cast<std::size_t>(i)]) return false;
    }
    return true;
}

bool perm_pair(const DataSem& a) {
    if (!a.init.is_array() || !a.fin.is_array()) return false;
    auto xs = a.init.as_array();
    auto ys = a.fin.as_array();
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    return xs == ys;
}

bool split_pred(const DataSem& a, const DataSem& p, const DataSem& q, const DataSem& r) {
    if (!a.fin.is_array() || !p.init.is_int() || !q.fin.is_int() || !r.init.is_int()) {
        return false;
    }
    const auto& xs = a.fin.as_array();
    std::int64_t n = static_cast<std::int64_t>(xs.size());
    std::int64_t lo = std::max<std::int64_t>(p.init.as_int(), 1);
    std::int64_t mid = std::min(q.fin.as_int(), n);
    std::int64_t jlo = std::max(q.fin.as_int() + 1, std::int64_t{1});
    std::int64_t hi = std::min(r.init.as_int(), n);
    for (std::int64_t i = lo; i <= mid; ++i) {
        for (std::int64_t j = jlo; j <= hi; ++j) {
            if (xs[static_cast<std::size_t>(i) - 1] > xs[static_cast<std::size_t>(j) - 1]) {
                return false;
            }
        }
    }
    return true;
}

void define_quicksort_relations(RelLibrary& lib) {
    RelParamKinds one_data{{false}, 0};
    RelParamKinds two_data{{false, false}, 0};
    RelParamKinds three_data{{false, false, false}, 0};
    RelParamKinds four_data{{false, false, false, false}, 0};
    RelParamKinds two_data_k{{false, false}, 1};

    lib.define_atom("eqsem", two_data,
                    [](const AtomArgs& a) { return a.data[0] == a.data[1]; });
    lib.define_atom("unchanged", one_data,
                    [](const AtomArgs& a) { return a.data[0].init == a.data[0].fin; });
    lib.define_atom("true_init", one_data, [](const AtomArgs& a) {
        return a.data[0].init.is_bool() && a.data[0].init.as_bool();
    });
    lib.define_atom("false_init", one_data, [](const AtomArgs& a) {
        return a.data[0].init.is_bool() && !a.data[0].init.as_bool();
    });
    lib.define_atom("lt_init", two_data, [](const AtomArgs& a) {
        return a.data[0].init.is_int() && a.data[1].init.is_int() &&
               as_int(a.data[0].init) < as_int(a.data[1].init);
    });
    lib.define_atom("ge_init", two_data, [](const AtomArgs& a) {
        return a.data[0].init.is_int() && a.data[1].init.is_int() &&
               as_int(a.data[0].init) >= as_int(a.data[1].init);
    });
    lib.define_atom("diam_le", two_data_k, [](const AtomArgs& a) {
        return a.data[0].init.is_int() && a.data[1].init.is_int() &&
               as_int(a.data[1].init) - as_int(a.data[0].init) <= a.ints[0];
    });
    lib.define_atom("inc_spec", two_data, [](const AtomArgs& a) {
        return both_int(a.data[0]) && a.data[1].fin.is_int() &&
               a.data[0].init == a.data[0].fin &&
               as_int(a.data[1].fin) == as_int(a.data[0].init) + 1;
    });
    lib.define_atom("id_spec", two_data, [](const AtomArgs& a) {
        return a.data[0].init == a.data[0].fin && a.data[1].fin == a.data[0].init;
    });
    lib.define_atom("plus_two", two_data, [](const AtomArgs& a) {
        return a.data[0].init.is_int() && a.data[1].fin.is_int() &&
               as_int(a.data[1].fin) == as_int(a.data[0].init) + 2;
    });
    lib.define_atom("lt_spec", three_data, [](const AtomArgs& a) {
        return a.data[0].init == a.data[0].fin && a.data[1].init == a.data[1].fin &&
               a.data[2].fin.is_bool() && a.data[0].init.is_int() && a.data[1].init.is_int() &&
               a.data[2].fin.as_bool() == (as_int(a.data[0].init) < as_int(a.data[1].init));
    });

    lib.define_atom("perm", one_data, [](const AtomArgs& a) { return perm_pair(a.data[0]); });
    lib.define_atom("bdry", two_data, [](const AtomArgs& a) {
        return a.data[0].init == a.data[0].fin && a.data[1].init == a.data[1].fin;
    });
    lib.define_atom("split", four_data, [](const AtomArgs& a) {
        return split_pred(a.data[0], a.data[1], a.data[2], a.data[3]);
    });
    lib.define_atom("part", four_data, [](const AtomArgs& a) {
        const DataSem& A = a.data[0];
        const DataSem& p = a.data[1];
        const DataSem& q = a.data[2];
        const DataSem& r = a.data[3];
        if (!p.init.is_int() || !q.fin.is_int() || !r.init.is_int()) return false;
        return perm_pair(A) && p.init == p.fin && r.init == r.fin &&
               as_int(p.init) <= as_int(q.fin) && as_int(q.fin) < as_int(r.init) &&
               split_pred(A, p, q, r);
    });
    lib.define_atom("sorted_ii", three_data, [](const AtomArgs& a) {
        return a.data[1].init.is_int() && a.data[2].init.is_int() &&
               sorted_range(a.data[0], as_int(a.data[1].init), as_int(a.data[2].init));
    });
    lib.define_atom("sorted_if", three_data, [](const AtomArgs& a) {
        return a.data[1].init.is_int() && a.data[2].fin.is_int() &&
               sorted_range(a.data[0], as_int(a.data[1].init), as_int(a.data[2].fin));
    });
    lib.define_atom("sorted_si", three_data, [](const AtomArgs& a) {
        return a.data[1].init.is_int() && a.data[2].init.is_int() &&
               sorted_range(a.data[0], as_int(a.data[1].init) + 1, as_int(a.data[2].init));
    });

    auto k0 = [] { return IntParam{"k", 0}; };
    auto k1 = [] { return IntParam{"k", 1}; };

    lib.define("R_perm", {"A"}, {}, rel_atom("perm", {"A"}));
    lib.define("R_bdry", {"x", "y"}, {}, rel_atom("bdry", {"x", "y"}));
    lib.define("R_split", {"A", "p", "q", "r"}, {}, rel_atom("split", {"A", "p", "q", "r"}));
    lib.define("R_part", {"A", "p", "q", "r"}, {}, rel_atom("part", {"A", "p", "q", "r"}));
    lib.define("R_sort", {"A", "x", "y"}, {}, rel_atom("sorted_ii", {"A", "x", "y"}));

    lib.define("R_1", {"A", "p", "q"}, {},
               rel_and({rel_atom("perm", {"A"}), rel_atom("bdry", {"p", "q"}),
                        rel_atom("sorted_ii", {"A", "p", "q"})}));
    lib.define("R_2", {"A", "p", "q", "r"}, {},
               rel_implies(rel_atom("lt_init", {"p", "r"}),
                           rel_atom("part", {"A", "p", "q", "r"})));
    lib.define("R_3", {"A", "p", "q", "r"}, {},
               rel_implies(rel_atom("lt_init", {"p", "r"}),
                           rel_and({rel_atom("part", {"A", "p", "q", "r"}),
                                    rel_atom("sorted_if", {"A", "p", "q"})})));
    lib.define("R_4", {"A", "p", "q", "r"}, {},
               rel_implies(rel_atom("lt_init", {"p", "r"}), rel_ref("R_1", {"A", "p", "r"})));
    lib.define("R_5", {"A", "p", "q", "r"}, {}, rel_ref("R_1", {"A", "p", "r"}));

    lib.define("R_qs_k", {"Q"}, {"k"},
               rel_proclift("Q", {"A", "p", "q"},
                            rel_implies(rel_atom("diam_le", {"p", "q"}, {k0()}),
                                        rel_ref("R_1", {"A", "p", "q"}))));
    lib.define("R_qs", {"Q"}, {},
               rel_proclift("Q", {"A", "p", "q"}, rel_ref("R_1", {"A", "p", "q"})));

    lib.define("R_1_k", {"A", "p", "q", "Q"}, {"k"},
               rel_implies(rel_and({rel_ref("R_qs_k", {"Q"}, {k0()}),
                                    rel_atom("diam_le", {"p", "q"}, {k0()})}),
                           rel_ref("R_1", {"A", "p", "q"})));
    lib.define("R_2_k", {"A", "p", "q", "r"}, {"k"},
               rel_implies(rel_atom("diam_le", {"p", "r"}, {k1()}),
                           rel_ref("R_2", {"A", "p", "q", "r"})));
    lib.define("R_3_k", {"A", "p", "q", "r", "Q"}, {"k"},
               rel_implies(rel_and({rel_ref("R_qs_k", {"Q"}, {k0()}),
                                    rel_atom("diam_le", {"p", "r"}, {k1()})}),
                           rel_ref("R_3", {"A", "p", "q", "r"})));
    lib.define("R_4_k", {"A", "p", "q", "r", "Q"}, {"k"},
               rel_implies(rel_and({rel_ref("R_qs_k", {"Q"}, {k0()}),
                                    rel_atom("diam_le", {"p", "r"}, {k1()})}),
                           rel_ref("R_4", {"A", "p", "q", "r"})));
    lib.define("R_5_k", {"A", "p", "q", "r", "Q"}, {"k"},
               rel_and({rel_implies(rel_atom("ge_init", {"p", "r"}),
                                    rel_atom("unchanged", {"A"})),
                        rel_implies(rel_and({rel_ref("R_qs_k", {"Q"}, {k0()}),
                                             rel_atom("diam_le", {"p", "r"}, {k1()})}),
                                    rel_ref("R_5", {"A", "p", "q", "r"}))}));
}

}  // namespace

const RelLibrary& standard_relations() { return standard_relations_mut(); }

RelLibrary& standard_relations_mut() {
    static RelLibrary lib = [] {
        RelLibrary l;
        define_quicksort_relations(l);
        return l;
    }();
    return lib;
}

RelBinding RelBinding::from_env(const Env& env) {
    RelBinding b;
    for (const auto& [var, sem] : env.data) b.data[var.name] = sem;
    for (const auto& [var, sem] : env.procs) b.procs[var.name] = sem;
    return b;
}

namespace {

long resolve_int(const IntParam& p, const RelBinding& binding) {
    if (p.var.empty()) return p.offset;
    auto it = binding.ints.find(p.var);
    if (it == binding.ints.end()) {
        throw PlError(Err::UnknownVariable, "unbound integer parameter " + p.var);
    }
    return it->second + p.offset;
}

bool eval_atom(const RelExpr& rel, const RelBinding& binding, const RelCtx& ctx) {
    const RelLibrary::AtomDef* atom = ctx.lib->find_atom(rel.name);
    if (!atom) throw PlError(Err::UnknownRulePayload, "unknown relation atom " + rel.name);
    AtomArgs args;
    for (std::size_t i = 0; i < rel.arg_vars.size(); ++i) {
        bool is_proc = i < atom->kinds.arg_is_proc.size() && atom->kinds.arg_is_proc[i];
        if (is_proc) {
            auto it = binding.procs.find(rel.arg_vars[i]);
            if (it == binding.procs.end()) {
                throw PlError(Err::UnknownVariable,
                              "unbound procedure " + rel.arg_vars[i] + " in " + rel.name);
            }
            args.procs.push_back(it->second);
        } else {
            auto it = binding.data.find(rel.arg_vars[i]);
            if (it == binding.data.end()) {
                throw PlError(Err::UnknownVariable,
                              "unbound variable " + rel.arg_vars[i] + " in " + rel.name);
            }
            args.data.push_back(it->second);
        }
    }
    for (const auto& p : rel.int_args) args.ints.push_back(resolve_int(p, binding));
    return atom->fn(args);
}

bool eval_ref(const RelExpr& rel, const RelBinding& binding, const RelCtx& ctx) {
    const RelLibrary::Def* def = ctx.lib->find_def_full(rel.name);
    if (!def) throw PlError(Err::UnknownRulePayload, "unknown relation " + rel.name);
    if (def->formals.size() != rel.arg_vars.size() ||
        def->int_formals.size() != rel.int_args.size()) {
        throw PlError(Err::UnknownRulePayload, "relation " + rel.name + " arity mismatch");
    }
    RelBinding inner;
    bool procs_only = true;
    std::vector<long> int_values;
    const void* proc_key = nullptr;
    for (std::size_t i = 0; i < def->formals.size(); ++i) {
        const std::string& arg = rel.arg_vars[i];
        auto pit = binding.procs.find(arg);
        if (pit != binding.procs.end()) {
            inner.procs[def->formals[i]] = pit->second;
            proc_key = pit->second.get();
            continue;
        }
        auto dit = binding.data.find(arg);
        if (dit != binding.data.end()) {
            inner.data[def->formals[i]] = dit->second;
            procs_only = false;
            continue;
        }
        throw PlError(Err::UnknownVariable, "unbound variable " + arg + " in " + rel.name);
    }
    for (std::size_t i = 0; i < def->int_formals.size(); ++i) {
        long v = resolve_int(rel.int_args[i], binding);
        inner.ints[def->int_formals[i]] = v;
        int_values.push_back(v);
    }
    // Closed applications over one procedure recur in every quantifier
    // iteration; cache them.
    bool cacheable = procs_only && inner.procs.size() == 1;
    std::tuple<std::string, const void*, std::vector<long>> key{rel.name, proc_key, int_values};
    if (cacheable) {
        auto it = ctx.ref_cache.find(key);
        if (it != ctx.ref_cache.end()) return it->second;
    }
    bool result = eval_rel(def->body, inner, ctx);
    if (cacheable) ctx.ref_cache.emplace(std::move(key), result);
    return result;
}

bool eval_proclift(const RelExpr& rel, const RelBinding& binding, const RelCtx& ctx) {
    auto it = binding.procs.find(rel.name);
    if (it == binding.procs.end()) {
        throw PlError(Err::UnknownVariable, "unbound procedure " + rel.name + " in proclift");
    }
    const ProcSem& proc = it->second;
    const TypeSigPtr& sig = proc_sig(proc);
    if (sig->arity() != rel.arg_vars.size()) {
        throw PlError(Err::UnknownRulePayload, "proclift tuple arity mismatch for " + rel.name);
    }
    // Enumerate in-position values plus unconstrained initial values of
    // out-only positions.
    std::vector<Sort> columns;
    std::vector<std::size_t> column_of(sig->arity(), SIZE_MAX);
    for (std::size_t i = 0; i < sig->arity(); ++i) {
        const ArgSig& a = sig->args[i];
        if (a.is_proc) {
            throw PlError(Err::DomainTooLarge, "cannot lift procedure-valued arguments");
        }
        column_of[i] = columns.size();
        columns.push_back(a.sort);
    }
    double total = 1;
    for (Sort s : columns) total *= static_cast<double>(ctx.domain.sort_size(s));
    if (total > static_cast<double>(ctx.fuel.max_enumeration)) {
        throw PlError(Err::DomainTooLarge, "proclift enumeration exceeds the fuel budget");
    }
    std::vector<std::vector<Value>> values;
    for (Sort s : columns) values.push_back(ctx.domain.enumerate(s));
    std::vector<std::size_t> index(columns.size(), 0);
    while (true) {
        std::vector<SemVal> ins;
        for (std::size_t i = 0; i < sig->arity(); ++i) {
            if (argio_in(sig->args[i].io)) {
                ins.emplace_back(values[column_of[i]][index[column_of[i]]]);
            }
        }
        auto outs = apply_proc(proc, ins, ctx.domain, ctx.fuel, /*enumeration=*/true);
        if (outs) {
            RelBinding inner = binding;
            std::size_t next_out = 0;
            for (std::size_t i = 0; i < sig->arity(); ++i) {
                const ArgSig& a = sig->args[i];
                Value init = values[column_of[i]][index[column_of[i]]];
                Value fin = argio_out(a.io) ? std::get<Value>((*outs)[next_out++]) : init;
                inner.data[rel.arg_vars[i]] = DataSem{init, fin};
            }
            if (!eval_rel(rel.children[0], inner, ctx)) return false;
        }
        std::size_t i = columns.size();
        while (i > 0) {
            if (++index[i - 1] < values[i - 1].size()) break;
            index[i - 1] = 0;
            --i;
        }
        if (i == 0 || columns.empty()) break;
    }
    return true;
}

}  // namespace

bool eval_rel(const RelExprPtr& rel, const RelBinding& binding, const RelCtx& ctx) {
    if (!rel) return true;
    switch (rel->kind) {
        case RelExpr::Kind::True:
            return true;
        case RelExpr::Kind::Atom:
            return eval_atom(*rel, binding, ctx);
        case RelExpr::Kind::Ref:
            return eval_ref(*rel, binding, ctx);
        case RelExpr::Kind::And:
            for (const auto& c : rel->children) {
                if (!eval_rel(c, binding, ctx)) return false;
            }
            return true;
        case RelExpr::Kind::Or:
            for (const auto& c : rel->children) {
                if (eval_rel(c, binding, ctx)) return true;
            }
            return false;
        case RelExpr::Kind::Not:
            return !eval_rel(rel->children[0], binding, ctx);
        case RelExpr::Kind::Implies:
            return !eval_rel(rel->children[0], binding, ctx) ||
                   eval_rel(rel->children[1], binding, ctx);
        case RelExpr::Kind::Exists: {
            std::vector<Value> values = ctx.domain.enumerate(rel->bound_sort);
            for (const auto& init : values) {
                for (const auto& fin : values) {
                    RelBinding inner = binding;
                    inner.data[rel->name] = DataSem{init, fin};
                    if (eval_rel(rel->children[0], inner, ctx)) return true;
                }
            }
            return false;
        }
        case RelExpr::Kind::ProcLift:
            return eval_proclift(*rel, binding, ctx);
        case RelExpr::Kind::ForallK: {
            for (long k = rel->k_lo; k <= rel->k_hi; ++k) {
                RelBinding inner = binding;
                inner.ints[rel->name] = k;
                if (!eval_rel(rel->children[0], inner, ctx)) return false;
            }
            return true;
        }
    }
    return true;
}

HoldsResult holds(const RelExprPtr& rel, const TermPtr& term, const Env& base_env,
                  const RelCtx& ctx, const std::map<std::string, long>& int_bindings) {
    SemSet set = semantics_set(term, base_env, ctx.domain, ctx.fuel);
    HoldsResult result;
    for (const auto& env : set.envs) {
        RelBinding binding = RelBinding::from_env(env);
        binding.ints = int_bindings;
        if (!eval_rel(rel, binding, ctx)) {
            result.verdict = HoldsResult::Verdict::CounterExample;
            result.counterexample = env;
            return result;
        }
    }
    if (set.had_bottom) {
        result.verdict = HoldsResult::Verdict::Unknown;
        result.fuel_involved = set.fuel_bottom;
        return result;
    }
    result.verdict = HoldsResult::Verdict::Valid;
    return result;
}

}  // namespace plstar
