#pragma once

#include <memory>
#include <string>
#include <vector>

namespace plstar {

// Closed set of data sorts. psi has sort Universal, the union of all of them.
enum class Sort { Int, Bool, IntArray, Unit, Universal };

const char* sort_name(Sort s);
bool sort_from_name(const std::string& name, Sort& out);

// Whether an argument's initial value is consumed, its final value produced,
// or both (an array that is read and updated in place, for instance).
enum class ArgIo { In, Out, InOut };

const char* argio_name(ArgIo io);

inline bool argio_in(ArgIo io) { return io != ArgIo::Out; }
inline bool argio_out(ArgIo io) { return io != ArgIo::In; }

struct TypeSig;
using TypeSigPtr = std::shared_ptr<const TypeSig>;

struct ArgSig {
    ArgIo io = ArgIo::In;
    bool is_proc = false;
    Sort sort = Sort::Int;  // when !is_proc
    TypeSigPtr proc_sig;    // when is_proc

    bool operator==(const ArgSig& other) const;
};

// Signature of a procedure variable: one ArgSig per argument position.
// Nested proc arguments make this a finite tree; an index sequence walks it.
struct TypeSig {
    std::vector<ArgSig> args;

    std::size_t arity() const { return args.size(); }
    bool operator==(const TypeSig& other) const;

    std::string to_string() const;

    static TypeSigPtr make(std::vector<ArgSig> args);
};

ArgSig data_arg(ArgIo io, Sort sort);
ArgSig proc_arg(ArgIo io, TypeSigPtr sig);

bool typesig_equal(const TypeSigPtr& a, const TypeSigPtr& b);

}  // namespace plstar
