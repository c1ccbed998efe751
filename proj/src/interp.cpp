#include "plstar/interp.hpp"

#include <algorithm>
#include <functional>

namespace plstar {

namespace {

struct Frame {
    std::map<VarId, Value> data;
    std::map<VarId, ProcSem> procs;
};

struct Machine {
    const Fuel& fuel;
    const Domain& domain;
    bool enumeration_mode = false;
    long depth = 0;
    bool fuel_flag = false;
    Value psi = Value::unit();
    std::vector<std::string> psi_log;  // executed store transformers, in order

    bool enter_call() {
        if (depth >= fuel.max_unfoldings) {
            fuel_flag = true;
            return false;
        }
        ++depth;
        return true;
    }
    void leave_call() { --depth; }
};

struct CallGuard {
    Machine& m;
    explicit CallGuard(Machine& machine) : m(machine) {}
    ~CallGuard() { m.leave_call(); }
};

bool run(const TermPtr& term, Frame& frame, Machine& m);

}  // namespace

class ProcSemImpl {
public:
    virtual ~ProcSemImpl() = default;
    virtual const TypeSigPtr& sig() const = 0;
    // nullopt is bottom
    virtual std::optional<std::vector<SemVal>> apply(const std::vector<SemVal>& ins,
                                                     Machine& m) const = 0;
    virtual const ProcGraph* graph() const { return nullptr; }
    virtual const std::string* intrinsic_name() const { return nullptr; }
};

namespace {

class IntrinsicSem : public ProcSemImpl {
public:
    explicit IntrinsicSem(const Builtin* builtin) : builtin_(builtin) {}

    const TypeSigPtr& sig() const override { return builtin_->sig; }

    std::optional<std::vector<SemVal>> apply(const std::vector<SemVal>& ins,
                                             Machine& m) const override {
        std::vector<Value> values;
        values.reserve(ins.size());
        for (const auto& v : ins) {
            if (!std::holds_alternative<Value>(v)) {
                throw PlError(Err::ExecutionError,
                              "builtin " + builtin_->name + " takes data arguments only");
            }
            values.push_back(std::get<Value>(v));
        }
        BuiltinCtx ctx{m.enumeration_mode, &m.domain};
        auto out = builtin_->fn(values, ctx);
        if (!out) return std::nullopt;
        std::vector<SemVal> result;
        result.reserve(out->size());
        for (auto& v : *out) result.emplace_back(std::move(v));
        return result;
    }

    const std::string* intrinsic_name() const override { return &builtin_->name; }

private:
    const Builtin* builtin_;
};

class GraphSem : public ProcSemImpl {
public:
    GraphSem(TypeSigPtr sig, ProcGraph graph) : sig_(std::move(sig)), graph_(std::move(graph)) {}

    const TypeSigPtr& sig() const override { return sig_; }

    std::optional<std::vector<SemVal>> apply(const std::vector<SemVal>& ins,
                                             Machine&) const override {
        std::vector<Value> key;
        key.reserve(ins.size());
        for (const auto& v : ins) {
            if (!std::holds_alternative<Value>(v)) return std::nullopt;
            key.push_back(std::get<Value>(v));
        }
        auto it = graph_.find(key);
        if (it == graph_.end() || !it->second) return std::nullopt;
        std::vector<SemVal> out;
        for (const auto& v : *it->second) out.emplace_back(v);
        return out;
    }

    const ProcGraph* graph() const override { return &graph_; }

private:
    TypeSigPtr sig_;
    ProcGraph graph_;
};

class ClosureSem : public ProcSemImpl, public std::enable_shared_from_this<ClosureSem> {
public:
    ClosureSem(VarId name, std::vector<VarId> formals, TermPtr body, Frame captured)
        : name_(std::move(name)),
          formals_(std::move(formals)),
          body_(std::move(body)),
          captured_(std::move(captured)) {}

    const TypeSigPtr& sig() const override { return name_.sig; }

    std::optional<std::vector<SemVal>> apply(const std::vector<SemVal>& ins,
                                             Machine& m) const override {
        if (!m.enter_call()) return std::nullopt;
        CallGuard guard(m);
        Frame frame = captured_;
        frame.procs[name_] = shared_from_this();  // recursion
        std::size_t next_in = 0;
        for (std::size_t i = 0; i < formals_.size(); ++i) {
            const ArgSig& a = name_.sig->args[i];
            if (argio_in(a.io)) {
                if (next_in >= ins.size()) {
                    throw PlError(Err::ExecutionError,
                                  "call of " + name_.name + " with too few arguments");
                }
                const SemVal& v = ins[next_in++];
                if (a.is_proc) {
                    frame.procs[formals_[i]] = std::get<ProcSem>(v);
                } else {
                    frame.data[formals_[i]] = std::get<Value>(v);
                }
            } else {
                if (a.is_proc) {
                    frame.procs.erase(formals_[i]);
                } else {
                    frame.data[formals_[i]] = Value::undef();
                }
            }
        }
        if (!run(body_, frame, m)) return std::nullopt;
        std::vector<SemVal> outs;
        for (std::size_t i = 0; i < formals_.size(); ++i) {
            const ArgSig& a = name_.sig->args[i];
            if (!argio_out(a.io)) continue;
            if (a.is_proc) {
                auto it = frame.procs.find(formals_[i]);
                if (it == frame.procs.end()) {
                    throw PlError(Err::ExecutionError,
                                  "procedure output " + formals_[i].name + " was never defined");
                }
                outs.emplace_back(it->second);
            } else {
                outs.emplace_back(frame.data.at(formals_[i]));
            }
        }
        return outs;
    }

private:
    VarId name_;
    std::vector<VarId> formals_;
    TermPtr body_;
    Frame captured_;
};

ProcSem make_closure(const ProcDef& def, const Frame& frame) {
    return std::make_shared<const ClosureSem>(def.name, def.formals, def.body, frame);
}

void apply_psi_transformer(const std::string& id, Frame& frame, Machine& m,
                           const VarSet& just_written) {
    const StoreTransformer* t = BuiltinRegistry::instance().find_transformer(id);
    if (!t) throw PlError(Err::ExecutionError, "unknown store transformer " + id);
    for (auto& [var, value] : frame.data) {
        if (just_written.count(var)) continue;
        value = (*t)(value);
    }
    m.psi = (*t)(m.psi);
    m.psi_log.push_back(id);
}

std::vector<SemVal> gather_ins(const VarId& callee, const std::vector<VarId>& actuals,
                               const Frame& frame) {
    std::vector<SemVal> ins;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const ArgSig& a = callee.sig->args[i];
        if (!argio_in(a.io)) continue;
        if (a.is_proc) {
            auto it = frame.procs.find(actuals[i]);
            if (it == frame.procs.end()) {
                const Builtin* b = BuiltinRegistry::instance().find(actuals[i].name);
                if (!b) {
                    throw PlError(Err::MissingInput,
                                  "procedure argument " + actuals[i].name + " is unbound");
                }
                ins.emplace_back(std::make_shared<const IntrinsicSem>(b));
            } else {
                ins.emplace_back(it->second);
            }
        } else {
            auto it = frame.data.find(actuals[i]);
            if (it == frame.data.end()) {
                throw PlError(Err::MissingInput,
                              "data variable " + actuals[i].name + " has no value");
            }
            ins.emplace_back(it->second);
        }
    }
    return ins;
}

void scatter_outs(const VarId& callee, const std::vector<VarId>& actuals,
                  const std::vector<SemVal>& outs, Frame& frame, VarSet& written) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < actuals.size(); ++i) {
        const ArgSig& a = callee.sig->args[i];
        if (!argio_out(a.io)) continue;
        const SemVal& v = outs.at(next++);
        if (a.is_proc) {
            frame.procs[actuals[i]] = std::get<ProcSem>(v);
        } else {
            frame.data[actuals[i]] = std::get<Value>(v);
        }
        written.insert(actuals[i]);
    }
}

bool run_call(const VarId& callee, const std::vector<VarId>& actuals, const ProcSem& sem,
              Frame& frame, Machine& m) {
    std::vector<SemVal> ins = gather_ins(callee, actuals, frame);
    std::size_t log_before = m.psi_log.size();
    auto outs = sem->apply(ins, m);
    if (!outs) return false;
    VarSet written;
    scatter_outs(callee, actuals, *outs, frame, written);
    // side effects recorded during the call touch the caller's other data
    for (std::size_t i = log_before; i < m.psi_log.size(); ++i) {
        const StoreTransformer* t = BuiltinRegistry::instance().find_transformer(m.psi_log[i]);
        for (auto& [var, value] : frame.data) {
            if (written.count(var)) continue;
            value = (*t)(value);
        }
    }
    return true;
}

std::vector<Sort> in_sorts(const TypeSig& sig) {
    std::vector<Sort> sorts;
    for (const auto& a : sig.args) {
        if (!argio_in(a.io)) continue;
        if (a.is_proc) {
            throw PlError(Err::DomainTooLarge,
                          "cannot enumerate procedure-valued argument positions");
        }
        sorts.push_back(a.sort);
    }
    return sorts;
}

void enumerate_tuples(const std::vector<Sort>& sorts, const Domain& domain, long budget,
                      const std::function<void(const std::vector<Value>&)>& fn) {
    double size = 1;
    for (Sort s : sorts) size *= static_cast<double>(domain.sort_size(s));
    if (size > static_cast<double>(budget)) {
        throw PlError(Err::DomainTooLarge,
                      "enumeration of " + std::to_string(static_cast<long long>(size)) +
                          " tuples exceeds the fuel budget");
    }
    std::vector<std::vector<Value>> columns;
    for (Sort s : sorts) columns.push_back(domain.enumerate(s));
    std::vector<std::size_t> index(sorts.size(), 0);
    std::vector<Value> tuple(sorts.size(), Value::undef());
    while (true) {
        for (std::size_t i = 0; i < sorts.size(); ++i) tuple[i] = columns[i][index[i]];
        fn(tuple);
        std::size_t i = sorts.size();
        while (i > 0) {
            if (++index[i - 1] < columns[i - 1].size()) break;
            index[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
}

// Hypothetical executions: enumeration mode regardless of the machine mode,
// psi state and fuel flag restored afterwards.
ProcGraph materialize(const ProcSem& proc, Machine& m) {
    ProcGraph graph;
    std::vector<Sort> sorts = in_sorts(*proc->sig());
    bool saved_mode = m.enumeration_mode;
    bool saved_flag = m.fuel_flag;
    Value saved_psi = m.psi;
    std::size_t saved_log = m.psi_log.size();
    m.enumeration_mode = true;
    enumerate_tuples(sorts, m.domain, m.fuel.max_enumeration,
                     [&](const std::vector<Value>& tuple) {
                         std::vector<SemVal> ins(tuple.begin(), tuple.end());
                         auto outs = proc->apply(ins, m);
                         if (!outs) {
                             graph.emplace(tuple, std::nullopt);
                             return;
                         }
                         std::vector<Value> values;
                         for (const auto& v : *outs) values.push_back(std::get<Value>(v));
                         graph.emplace(tuple, std::move(values));
                     });
    m.enumeration_mode = saved_mode;
    m.fuel_flag = saved_flag;
    m.psi = saved_psi;
    m.psi_log.resize(saved_log);
    return graph;
}

bool run_fix(const Fix& fix, Frame& frame, Machine& m) {
    ProcSem q = graph_proc(fix.used.sig, {});
    for (long iter = 0; iter < m.fuel.max_unfoldings; ++iter) {
        Frame inner = frame;
        inner.procs[fix.used] = q;
        if (!run(fix.body, inner, m)) return false;
        auto it = inner.procs.find(fix.defined);
        if (it == inner.procs.end()) {
            throw PlError(Err::PrecondViolation, "fix body does not define " + fix.defined.name);
        }
        ProcGraph next = materialize(it->second, m);
        const ProcGraph* prev = q->graph();
        if (!graph_leq(*prev, next)) {
            throw PlError(Err::NoLeastSolution,
                          "fix iteration is not monotone for " + fix.defined.name);
        }
        if (*prev == next) {
            inner.procs.erase(fix.used);
            inner.procs[fix.defined] = q;
            frame = std::move(inner);
            return true;
        }
        q = graph_proc(fix.used.sig, std::move(next));
    }
    m.fuel_flag = true;
    return false;
}

bool run(const TermPtr& term, Frame& frame, Machine& m) {
    if (!term) return true;
    if (term->as<Fragment>()) {
        throw PlError(Err::PrecondViolation, "cannot evaluate a fragment variable", term->span);
    }
    if (const auto* p = term->as<Prim>()) {
        const Builtin* b = BuiltinRegistry::instance().find(p->name);
        if (!b) throw PlError(Err::UnboundPrimitive, "unknown builtin " + p->name, term->span);
        std::vector<Value> ins;
        for (std::size_t i = 0; i < p->vars.size(); ++i) {
            if (!argio_in(b->sig->args[i].io)) continue;
            auto it = frame.data.find(p->vars[i]);
            if (it == frame.data.end()) {
                throw PlError(Err::MissingInput,
                              "data variable " + p->vars[i].name + " has no value", term->span);
            }
            ins.push_back(it->second);
        }
        BuiltinCtx ctx{m.enumeration_mode, &m.domain};
        auto outs = b->fn(ins, ctx);
        if (!outs) return false;
        VarSet written;
        std::size_t next = 0;
        for (std::size_t i = 0; i < p->vars.size(); ++i) {
            if (!argio_out(b->sig->args[i].io)) continue;
            frame.data[p->vars[i]] = outs->at(next++);
            written.insert(p->vars[i]);
        }
        if (p->effect.psi_transformer) {
            apply_psi_transformer(*p->effect.psi_transformer, frame, m, written);
        }
        return true;
    }
    if (const auto* s = term->as<Seq>()) {
        return run(s->first, frame, m) && run(s->second, frame, m);
    }
    if (const auto* c = term->as<Cond>()) {
        auto it = frame.data.find(c->scrutinee);
        if (it == frame.data.end()) {
            throw PlError(Err::MissingInput, "condition " + c->scrutinee.name + " has no value",
                          term->span);
        }
        if (it->second.is_undef()) return false;
        if (!it->second.is_bool()) {
            throw PlError(Err::ExecutionError,
                          "condition " + c->scrutinee.name + " is not boolean", term->span);
        }
        return run(it->second.as_bool() ? c->then_branch : c->else_branch, frame, m);
    }
    if (const auto* l = term->as<Local>()) {
        std::optional<Value> saved;
        auto it = frame.data.find(l->var);
        if (it != frame.data.end()) saved = it->second;
        frame.data[l->var] = Value::undef();
        bool ok = run(l->body, frame, m);
        if (saved) {
            frame.data[l->var] = *saved;
        } else {
            frame.data.erase(l->var);
        }
        return ok;
    }
    if (const auto* d = term->as<ProcDef>()) {
        frame.procs[d->name] = make_closure(*d, frame);
        return true;
    }
    if (const auto* k = term->as<ProcCall>()) {
        if (k->prefix && !run(k->prefix, frame, m)) return false;
        ProcSem sem;
        auto it = frame.procs.find(k->callee);
        if (it != frame.procs.end()) {
            sem = it->second;
        } else {
            const Builtin* b = BuiltinRegistry::instance().find(k->callee.name);
            if (!b) {
                throw PlError(Err::MissingInput, "procedure " + k->callee.name + " is unbound",
                              term->span);
            }
            sem = std::make_shared<const IntrinsicSem>(b);
        }
        return run_call(k->callee, k->actuals, sem, frame, m);
    }
    if (const auto* x = term->as<Fix>()) {
        return run_fix(*x, frame, m);
    }
    return true;
}

Frame frame_from_env(const TermPtr& term, const Env& input_env) {
    Frame frame;
    for (const auto& v : free_vars(term)) {
        if (v.is_proc) {
            if (const ProcSem* sem = input_env.find_proc(v)) frame.procs[v] = *sem;
            // unbound procedure inputs fall back to the registry at call time
        } else {
            if (const DataSem* sem = input_env.find_data(v)) {
                frame.data[v] = sem->init;
            } else {
                frame.data[v] = Value::undef();
            }
        }
    }
    return frame;
}

void validate_for_eval(const TermPtr& term) {
    if (contains_fragment(term)) {
        throw PlError(Err::PrecondViolation, "term contains fragment variables");
    }
    auto diags = check_preconditions(term);
    if (!diags.empty()) {
        throw PlError(Err::PrecondViolation,
                      "term violates operator preconditions: " + diags.front().message);
    }
}

EvalOutcome eval_prepared(const TermPtr& term, const Env& input_env, const Fuel& fuel,
                          const Domain& domain, bool enumeration_mode) {
    Machine m{fuel, domain, enumeration_mode};
    m.psi = input_env.psi.init;
    Frame frame = frame_from_env(term, input_env);
    std::map<VarId, Value> inits = frame.data;
    bool ok = run(term, frame, m);
    EvalOutcome outcome;
    if (!ok) {
        outcome.bottom = true;
        outcome.fuel_exhausted = m.fuel_flag;
        return outcome;
    }
    Env env;
    for (const auto& [var, init] : inits) {
        env.data[var] = DataSem{init, frame.data.at(var)};
    }
    VarSets vs = var_sets(term);
    for (const auto& v : vs.outputs) {
        if (v.is_proc) {
            auto it = frame.procs.find(v);
            if (it != frame.procs.end()) env.procs[v] = it->second;
        }
    }
    for (const auto& [var, sem] : input_env.procs) {
        if (!env.procs.count(var)) env.procs[var] = sem;
    }
    env.psi = DataSem{input_env.psi.init, m.psi};
    outcome.env = std::move(env);
    outcome.fuel_exhausted = m.fuel_flag;
    return outcome;
}

}  // namespace

EvalOutcome eval(const TermPtr& term, const Env& input_env, const Fuel& fuel,
                 const Domain& domain, bool enumeration_mode) {
    validate_for_eval(term);
    return eval_prepared(term, input_env, fuel, domain, enumeration_mode);
}

Env compose_phi(const Env& f, const Env& g, const TermPtr& p, const TermPtr& q) {
    VarSets vp = var_sets(p);
    VarSets vq = var_sets(q);
    Env out;
    for (const auto& z : vp.procs) {
        const ProcSem* fz = f.find_proc(z);
        if (!fz) continue;
        out.procs[z] = *fz;
        if (vq.procs.count(z)) {
            const ProcSem* gz = g.find_proc(z);
            if (gz && fz->get() != gz->get()) {
                const std::string* fn = (*fz)->intrinsic_name();
                const std::string* gn = (*gz)->intrinsic_name();
                bool same = fn && gn && *fn == *gn;
                const ProcGraph* fg = (*fz)->graph();
                const ProcGraph* gg = (*gz)->graph();
                if (!same && fg && gg) same = *fg == *gg;
                if (!same) {
                    throw PlError(Err::PhiPrecondViolated,
                                  "shared procedure " + z.name + " disagrees");
                }
            }
        }
    }
    for (const auto& z : vq.procs) {
        if (!out.procs.count(z)) {
            const ProcSem* gz = g.find_proc(z);
            if (gz) out.procs[z] = *gz;
        }
    }
    for (const auto& z : vp.data) {
        const DataSem* fz = f.find_data(z);
        if (!fz) throw PlError(Err::PhiPrecondViolated, "missing data semantics for " + z.name);
        if (vq.data.count(z)) {
            const DataSem* gz = g.find_data(z);
            if (!gz) {
                throw PlError(Err::PhiPrecondViolated, "missing data semantics for " + z.name);
            }
            if (fz->fin != gz->init) {
                throw PlError(Err::PhiPrecondViolated,
                              "data variable " + z.name + " does not chain");
            }
            out.data[z] = DataSem{fz->init, gz->fin};
        } else {
            out.data[z] = *fz;
        }
    }
    for (const auto& z : vq.data) {
        if (!out.data.count(z)) {
            const DataSem* gz = g.find_data(z);
            if (!gz) {
                throw PlError(Err::PhiPrecondViolated, "missing data semantics for " + z.name);
            }
            out.data[z] = *gz;
        }
    }
    if (f.psi.fin != g.psi.init) {
        throw PlError(Err::PhiPrecondViolated, "psi does not chain");
    }
    out.psi = DataSem{f.psi.init, g.psi.fin};
    return out;
}

SemSet semantics_set(const TermPtr& term, const Env& base_env, const Domain& domain,
                     const Fuel& fuel) {
    validate_for_eval(term);
    VarSets vs = var_sets(term);
    VarSet all_data = vs.data;
    for (const auto& v : vs.free()) {
        if (!v.is_proc) all_data.insert(v);
    }
    std::vector<VarId> data_vars(all_data.begin(), all_data.end());
    std::vector<Sort> sorts;
    for (const auto& v : data_vars) sorts.push_back(v.sort);

    SemSet result;
    enumerate_tuples(sorts, domain, fuel.max_enumeration,
                     [&](const std::vector<Value>& tuple) {
                         Env input = base_env;
                         for (std::size_t i = 0; i < data_vars.size(); ++i) {
                             input.data[data_vars[i]] = DataSem{tuple[i], tuple[i]};
                         }
                         EvalOutcome outcome =
                             eval_prepared(term, input, fuel, domain, /*enumeration=*/true);
                         if (!outcome.ok()) {
                             result.had_bottom = true;
                             result.fuel_bottom |= outcome.fuel_exhausted;
                             return;
                         }
                         result.envs.push_back(std::move(*outcome.env));
                     });
    std::stable_sort(result.envs.begin(), result.envs.end(), env_data_less);
    return result;
}

std::optional<std::vector<SemVal>> apply_proc(const ProcSem& proc, std::vector<SemVal> ins,
                                              const Domain& domain, const Fuel& fuel,
                                              bool enumeration_mode) {
    Machine m{fuel, domain, enumeration_mode};
    return proc->apply(ins, m);
}

ProcGraph materialize_proc(const ProcSem& proc, const Domain& domain, const Fuel& fuel) {
    Machine m{fuel, domain, /*enumeration_mode=*/true};
    return materialize(proc, m);
}

const TypeSigPtr& proc_sig(const ProcSem& proc) { return proc->sig(); }

bool graph_leq(const ProcGraph& lo, const ProcGraph& hi) {
    for (const auto& [key, value] : lo) {
        if (!value) continue;
        auto it = hi.find(key);
        if (it == hi.end() || !it->second || *it->second != *value) return false;
    }
    return true;
}

bool proc_equal(const ProcSem& a, const ProcSem& b, const Domain& domain, const Fuel& fuel) {
    if (a.get() == b.get()) return true;
    return materialize_proc(a, domain, fuel) == materialize_proc(b, domain, fuel);
}

ProcSem intrinsic_proc(const std::string& builtin_name) {
    const Builtin* b = BuiltinRegistry::instance().find(builtin_name);
    if (!b) throw PlError(Err::UnboundPrimitive, "unknown builtin " + builtin_name);
    return std::make_shared<const IntrinsicSem>(b);
}

ProcSem graph_proc(TypeSigPtr sig, ProcGraph graph) {
    return std::make_shared<const GraphSem>(std::move(sig), std::move(graph));
}

std::vector<ProcGraph> fix_iterates(const TermPtr& fix_term, const Env& input_env,
                                    const Fuel& fuel, const Domain& domain) {
    const auto* fix = fix_term->as<Fix>();
    if (!fix) throw PlError(Err::BadTerm, "fix_iterates requires a fix term");
    Machine m{fuel, domain, /*enumeration_mode=*/true};
    Frame frame = frame_from_env(fix_term, input_env);
    std::vector<ProcGraph> iterates;
    ProcGraph current;
    ProcSem q = graph_proc(fix->used.sig, current);
    iterates.push_back(current);
    for (long iter = 0; iter < fuel.max_unfoldings; ++iter) {
        Frame inner = frame;
        inner.procs[fix->used] = q;
        if (!run(fix->body, inner, m)) break;
        auto it = inner.procs.find(fix->defined);
        if (it == inner.procs.end()) break;
        ProcGraph next = materialize(it->second, m);
        iterates.push_back(next);
        if (next == current) break;
        current = std::move(next);
        q = graph_proc(fix->used.sig, current);
    }
    return iterates;
}

bool env_data_less(const Env& a, const Env& b) {
    if (a.data != b.data) return a.data < b.data;
    return a.psi < b.psi;
}

bool env_data_equal(const Env& a, const Env& b) { return a.data == b.data && a.psi == b.psi; }

}  // namespace plstar
