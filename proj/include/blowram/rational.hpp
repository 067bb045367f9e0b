#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace blowram {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline BigRat rat_pow(const BigRat& base, unsigned exp) {
    return BigRat(big_pow(numerator(base), exp), big_pow(denominator(base), exp));
}

inline BigInt big_binomial(const BigInt& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (BigInt(k) > n) return 0;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// Natural log of a positive big integer; exact enough for bound arithmetic
// (uses the top 64 bits plus the exponent).
inline double log_big(const BigInt& x) {
    if (x <= 0) throw std::invalid_argument("log_big: non-positive");
    long bits = static_cast<long>(boost::multiprecision::msb(x));
    if (bits <= 62) return std::log(x.convert_to<double>());
    BigInt top = x >> (bits - 62);
    return std::log(top.convert_to<double>()) + static_cast<double>(bits - 62) * std::log(2.0);
}

inline double log_rat(const BigRat& x) {
    if (x <= 0) throw std::invalid_argument("log_rat: non-positive");
    return log_big(numerator(x)) - log_big(denominator(x));
}

inline std::string rat_to_string(const BigRat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

// Rational enclosure of Euler's number via partial sums of sum 1/k!;
// the tail beyond K terms is below 1/(K! * K).
inline void euler_enclosure(unsigned terms, BigRat& lo, BigRat& hi) {
    BigRat sum = 0;
    BigInt fact = 1;
    for (unsigned k = 0; k <= terms; ++k) {
        if (k > 0) fact *= k;
        sum += BigRat(1, fact);
    }
    lo = sum;
    hi = sum + BigRat(1, fact * terms);
}

// Decide x * e <= 1 exactly for rational x >= 0 (equality cannot occur since
// 1/e is irrational).
inline bool times_euler_at_most_one(const BigRat& x) {
    if (x <= 0) return true;
    for (unsigned terms = 8;; terms *= 2) {
        BigRat lo, hi;
        euler_enclosure(terms, lo, hi);
        if (x * hi <= 1) return true;
        if (x * lo > 1) return false;
        if (terms > 4096) throw std::runtime_error("euler enclosure failed to separate");
    }
}

} // namespace blowram
