#pragma once

// Exact integer/rational arithmetic used by the lattice counters.
// Backed by boost::multiprecision (header-only); nothing here ever touches
// floating point when deciding a membership inequality.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace supel {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1u) r *= base;
        exp >>= 1u;
        if (exp) base *= base;
    }
    return r;
}

// Largest m >= 0 with m^omega * B <= A.  Integer binary search; the bracket
// grows by doubling, so the cost is O(log m) big-integer powerings.
inline BigInt floor_root(const BigInt& A, const BigInt& B, unsigned omega) {
    if (A < 0) throw std::invalid_argument("floor_root: A must be >= 0");
    if (B < 1) throw std::invalid_argument("floor_root: B must be >= 1");
    if (omega < 1) throw std::invalid_argument("floor_root: omega must be >= 1");
    if (A < B) return 0;
    if (omega == 1) return A / B;

    BigInt lo = 1, hi = 2;
    while (ipow(hi, omega) * B <= A) {
        lo = hi;
        hi <<= 1;
    }
    // invariant: lo^omega*B <= A < hi^omega*B
    while (hi - lo > 1) {
        BigInt mid = (lo + hi) >> 1;
        if (ipow(mid, omega) * B <= A)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Parses "p", "p/q", or a plain decimal like "2.5" into an exact rational.
inline BigRat parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q == 0) throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
        return BigRat(p, q);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        return BigRat(BigInt(digits), ipow(BigInt(10), static_cast<unsigned>(frac_len)));
    }
    return BigRat(BigInt(text));
}

inline double to_double(const BigRat& r) { return r.template convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.template convert_to<double>(); }

// floor(p/q) for q > 0 (cpp_int division truncates toward zero).
inline BigInt floor_div(const BigInt& p, const BigInt& q) {
    BigInt d = p / q;
    if (p % q != 0 && (p < 0) != (q < 0)) --d;
    return d;
}

inline BigInt floor_rat(const BigRat& r) {
    return floor_div(numerator(r), denominator(r));
}

}  // namespace supel
