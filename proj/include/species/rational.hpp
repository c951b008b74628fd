#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

namespace species {

// Exact coefficient arithmetic. cpp_rational keeps lowest terms with a
// positive denominator, which is exactly the invariant we need.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (int i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

inline Int int_pow(Int base, long long e) {
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// The two-argument Rational constructor requires a positive denominator;
// this one normalizes the sign.
inline Rational make_rational(Int num, Int den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(std::move(num), std::move(den));
}

inline Rational rat_pow(const Rational& base, long long e) {
    if (e < 0) return make_rational(int_pow(denominator(base), -e), int_pow(numerator(base), -e));
    return Rational(int_pow(numerator(base), e), int_pow(denominator(base), e));
}

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// "p" or "p/q"
inline std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

inline std::string int_str(const Int& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace species
