#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "plstar/analysis.hpp"
#include "plstar/builtins.hpp"
#include "plstar/term.hpp"
#include "plstar/value.hpp"

namespace plstar {

// Semantics of a data variable across one fragment execution.
struct DataSem {
    Value init;
    Value fin;

    bool operator==(const DataSem&) const = default;
    bool operator<(const DataSem& other) const {
        if (init != other.init) return init < other.init;
        return fin < other.fin;
    }
};

class ProcSemImpl;
using ProcSem = std::shared_ptr<const ProcSemImpl>;

// Either a concrete value or a procedure semantics; procedure-valued
// arguments carry the latter.
using SemVal = std::variant<Value, ProcSem>;

struct Env {
    std::map<VarId, DataSem> data;
    std::map<VarId, ProcSem> procs;
    DataSem psi{Value::unit(), Value::unit()};

    const DataSem* find_data(const VarId& v) const {
        auto it = data.find(v);
        return it == data.end() ? nullptr : &it->second;
    }
    const ProcSem* find_proc(const VarId& v) const {
        auto it = procs.find(v);
        return it == procs.end() ? nullptr : &it->second;
    }
};

struct EvalOutcome {
    std::optional<Env> env;
    bool bottom = false;
    bool fuel_exhausted = false;

    bool ok() const { return env.has_value(); }
};

// Reference denotational evaluation of a fragment-free term. input_env
// provides initial values for data variables and semantics for input
// procedure variables; builtin names resolve through the registry.
EvalOutcome eval(const TermPtr& term, const Env& input_env, const Fuel& fuel,
                 const Domain& domain = {}, bool enumeration_mode = false);

// The phi operator: procedures from f (else g), shared data chained
// (a,b)*(b,c) = (a,c). Throws PhiPrecondViolated when the chain breaks or
// shared procedures disagree.
Env compose_phi(const Env& f, const Env& g, const TermPtr& p, const TermPtr& q);

struct SemSet {
    std::vector<Env> envs;     // total environments, deterministic order
    bool had_bottom = false;   // some input led to bottom
    bool fuel_bottom = false;  // ... and fuel was involved
};

// The finite-domain denotation: every input assignment over the domain (all
// free and listed data variables, initial values of outputs included) mapped
// through eval. Free procedure variables come from base_env or the registry.
SemSet semantics_set(const TermPtr& term, const Env& base_env, const Domain& domain,
                     const Fuel& fuel);

// Applies a procedure semantics to in-position argument values; nullopt is
// bottom. Runs on a scratch machine with the given budget.
std::optional<std::vector<SemVal>> apply_proc(const ProcSem& proc, std::vector<SemVal> ins,
                                              const Domain& domain, const Fuel& fuel,
                                              bool enumeration_mode = false);

// Finite graph of a procedure over the domain (data-only signatures).
using ProcGraph = std::map<std::vector<Value>, std::optional<std::vector<Value>>>;

ProcGraph materialize_proc(const ProcSem& proc, const Domain& domain, const Fuel& fuel);

const TypeSigPtr& proc_sig(const ProcSem& proc);

// Pointwise flat definedness order on graphs.
bool graph_leq(const ProcGraph& lo, const ProcGraph& hi);

bool proc_equal(const ProcSem& a, const ProcSem& b, const Domain& domain, const Fuel& fuel);

ProcSem intrinsic_proc(const std::string& builtin_name);
ProcSem graph_proc(TypeSigPtr sig, ProcGraph graph);

// The successive Kleene iterates of a Fix node's materialized graphs, for
// property tests: bottom, then each improvement, ending at the fixpoint or
// the fuel limit.
std::vector<ProcGraph> fix_iterates(const TermPtr& fix_term, const Env& input_env,
                                    const Fuel& fuel, const Domain& domain);

// Deterministic ordering key over the data part of an environment.
bool env_data_less(const Env& a, const Env& b);
bool env_data_equal(const Env& a, const Env& b);

}  // namespace plstar
