#include "plstar/value.hpp"

#include "plstar/diagnostics.hpp"

namespace plstar {

std::string Value::to_string() const {
    if (is_undef()) return "undefined";
    if (std::holds_alternative<Unit>(rep)) return "unit";
    if (is_bool()) return as_bool() ? "true" : "false";
    if (is_int()) return std::to_string(as_int());
    std::string out = "[";
    const auto& xs = as_array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(xs[i]);
    }
    out += "]";
    return out;
}

Value default_undef_for(Sort) { return Value::undef(); }

std::size_t Domain::sort_size(Sort sort) const {
    switch (sort) {
        case Sort::Int:
            return static_cast<std::size_t>(int_hi - int_lo + 1);
        case Sort::Bool:
            return 2;
        case Sort::Unit:
        case Sort::Universal:
            return 1;
        case Sort::IntArray: {
            std::size_t values = static_cast<std::size_t>(array_hi - array_lo + 1);
            std::size_t total = 0;
            std::size_t per_len = 1;
            for (std::size_t len = 0; len <= array_max_len; ++len) {
                total += per_len;
                per_len *= values;
            }
            return total;
        }
    }
    return 0;
}

std::vector<Value> Domain::enumerate(Sort sort) const {
    std::vector<Value> out;
    switch (sort) {
        case Sort::Int:
            for (std::int64_t n = int_lo; n <= int_hi; ++n) out.push_back(Value::integer(n));
            break;
        case Sort::Bool:
            out.push_back(Value::boolean(false));
            out.push_back(Value::boolean(true));
            break;
        case Sort::Unit:
        case Sort::Universal:
            out.push_back(Value::unit());
            break;
        case Sort::IntArray: {
            std::vector<std::int64_t> current;
            // breadth by length, lexicographic within a length
            for (std::size_t len = 0; len <= array_max_len; ++len) {
                current.assign(len, array_lo);
                while (true) {
                    out.push_back(Value::array(current));
                    std::size_t i = len;
                    while (i > 0) {
                        if (current[i - 1] < array_hi) {
                            ++current[i - 1];
                            break;
                        }
                        current[i - 1] = array_lo;
                        --i;
                    }
                    if (i == 0) break;
                }
            }
            break;
        }
    }
    return out;
}

bool Domain::contains(Sort sort, const Value& v) const {
    switch (sort) {
        case Sort::Int:
            return v.is_int() && v.as_int() >= int_lo && v.as_int() <= int_hi;
        case Sort::Bool:
            return v.is_bool();
        case Sort::Unit:
        case Sort::Universal:
            return std::holds_alternative<Value::Unit>(v.rep);
        case Sort::IntArray: {
            if (!v.is_array()) return false;
            const auto& xs = v.as_array();
            if (xs.size() > array_max_len) return false;
            for (auto x : xs) {
                if (x < array_lo || x > array_hi) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace plstar
