#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "plstar/typesig.hpp"

namespace plstar {

// Flat value domain. Undefined is the bottom of the definedness order;
// defined values are pairwise incomparable.
struct Value {
    struct Undef {
        bool operator==(const Undef&) const { return true; }
        bool operator<(const Undef&) const { return false; }
    };
    struct Unit {
        bool operator==(const Unit&) const { return true; }
        bool operator<(const Unit&) const { return false; }
    };
    using Rep = std::variant<Undef, Unit, bool, std::int64_t, std::vector<std::int64_t>>;

    Rep rep = Undef{};

    static Value undef() { return Value{Undef{}}; }
    static Value unit() { return Value{Unit{}}; }
    static Value boolean(bool b) { return Value{b}; }
    static Value integer(std::int64_t n) { return Value{n}; }
    static Value array(std::vector<std::int64_t> xs) { return Value{std::move(xs)}; }

    bool is_undef() const { return std::holds_alternative<Undef>(rep); }
    bool is_bool() const { return std::holds_alternative<bool>(rep); }
    bool is_int() const { return std::holds_alternative<std::int64_t>(rep); }
    bool is_array() const { return std::holds_alternative<std::vector<std::int64_t>>(rep); }

    bool as_bool() const { return std::get<bool>(rep); }
    std::int64_t as_int() const { return std::get<std::int64_t>(rep); }
    const std::vector<std::int64_t>& as_array() const {
        return std::get<std::vector<std::int64_t>>(rep);
    }
    std::vector<std::int64_t>& as_array_mut() {
        return std::get<std::vector<std::int64_t>>(rep);
    }

    bool operator==(const Value& other) const { return rep == other.rep; }
    bool operator!=(const Value& other) const { return !(*this == other); }
    bool operator<(const Value& other) const { return rep < other.rep; }

    std::string to_string() const;
};

Value default_undef_for(Sort sort);

// Finite enumeration bounds for semantics sets, fixpoint materialization and
// relation checks.
struct Domain {
    std::int64_t int_lo = -128;
    std::int64_t int_hi = 127;
    std::size_t array_max_len = 3;
    std::int64_t array_lo = 1;
    std::int64_t array_hi = 3;

    std::size_t sort_size(Sort sort) const;
    std::vector<Value> enumerate(Sort sort) const;
    bool contains(Sort sort, const Value& v) const;
};

struct Fuel {
    long max_unfoldings = 256;
    long max_enumeration = 1000000;
};

}  // namespace plstar
