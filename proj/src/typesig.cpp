#include "plstar/typesig.hpp"

namespace plstar {

const char* sort_name(Sort s) {
    switch (s) {
        case Sort::Int: return "int";
        case Sort::Bool: return "bool";
        case Sort::IntArray: return "int-array";
        case Sort::Unit: return "unit";
        case Sort::Universal: return "universal";
    }
    return "?";
}

bool sort_from_name(const std::string& name, Sort& out) {
    if (name == "int") { out = Sort::Int; return true; }
    if (name == "bool") { out = Sort::Bool; return true; }
    if (name == "int-array") { out = Sort::IntArray; return true; }
    if (name == "unit") { out = Sort::Unit; return true; }
    if (name == "universal") { out = Sort::Universal; return true; }
    return false;
}

const char* argio_name(ArgIo io) {
    switch (io) {
        case ArgIo::In: return "in";
        case ArgIo::Out: return "out";
        case ArgIo::InOut: return "inout";
    }
    return "?";
}

bool ArgSig::operator==(const ArgSig& other) const {
    if (io != other.io || is_proc != other.is_proc) return false;
    if (is_proc) return typesig_equal(proc_sig, other.proc_sig);
    return sort == other.sort;
}

bool TypeSig::operator==(const TypeSig& other) const { return args == other.args; }

std::string TypeSig::to_string() const {
    std::string out = "proc(";
    bool first = true;
    for (const auto& a : args) {
        if (!first) out += ", ";
        first = false;
        out += argio_name(a.io);
        out += " ";
        out += a.is_proc ? a.proc_sig->to_string() : sort_name(a.sort);
    }
    out += ")";
    return out;
}

TypeSigPtr TypeSig::make(std::vector<ArgSig> args) {
    auto sig = std::make_shared<TypeSig>();
    sig->args = std::move(args);
    return sig;
}

ArgSig data_arg(ArgIo io, Sort sort) {
    ArgSig a;
    a.io = io;
    a.is_proc = false;
    a.sort = sort;
    return a;
}

ArgSig proc_arg(ArgIo io, TypeSigPtr sig) {
    ArgSig a;
    a.io = io;
    a.is_proc = true;
    a.proc_sig = std::move(sig);
    return a;
}

bool typesig_equal(const TypeSigPtr& a, const TypeSigPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

}  // namespace plstar
