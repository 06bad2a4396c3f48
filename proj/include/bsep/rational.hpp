#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <vector>

namespace bsep {

// Exact arithmetic throughout. cpp_rational keeps values reduced with a
// positive denominator, which is exactly the canonical form we rely on.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt floor_rat(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline BigInt ceil_rat(const Rational& r) {
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline long long to_int64(const BigInt& v) { return v.convert_to<long long>(); }

inline long long ceil_to_int64(const Rational& r) { return to_int64(ceil_rat(r)); }

/// Least common multiple of the denominators of `values` (1 if empty).
inline BigInt lcm_of_denominators(const std::vector<Rational>& values) {
    BigInt l = 1;
    for (const auto& v : values) l = boost::multiprecision::lcm(l, BigInt(denominator(v)));
    return l;
}

/// "p/q", or just "p" when the value is an integer.
inline std::string rat_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

}  // namespace bsep
