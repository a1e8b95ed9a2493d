#pragma once

// Exact counting of Z^d ∩ tD for rational t = p/q.
//
// The membership inequality sum_l (k_l/t)^{w_l} <= 1 is decided in exact
// rational arithmetic: a remaining budget R = A/B >= 0 is threaded through
// the axes (R' = R - (k_l q)^{w_l} / p^{w_l}), the reach of each axis is the
// integer root m = max{ k : k^{w} <= R t^{w} }, and the last axis is counted
// in closed form as 2*floor_root(...) + 1.  No floating point anywhere in a
// decision, so points exactly on the boundary are classified correctly (and
// counted: the domain is closed).

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "supel/bigint.hpp"
#include "supel/common.hpp"
#include "supel/domain.hpp"

namespace supel {

struct CountResult {
    BigRat t;
    BigInt count;
    double elapsed = 0.0;  // seconds
};

struct DiscrepancyRecord {
    BigRat t;
    BigInt count;
    double volume_term = 0.0;  // vol(D) * t^d
    double discrepancy = 0.0;  // count - volume_term
};

namespace detail {

struct CountContext {
    const DomainSpec* dom;
    BigInt p, q;
    std::vector<BigInt> p_pow, q_pow;  // p^{w_l}, q^{w_l}
};

inline CountContext make_count_context(const DomainSpec& dom, const BigRat& t) {
    if (t <= 0) throw std::invalid_argument("count: t must be > 0");
    CountContext cx;
    cx.dom = &dom;
    cx.p = numerator(t);
    cx.q = denominator(t);
    for (int l = 0; l < dom.dimension; ++l) {
        cx.p_pow.push_back(ipow(cx.p, static_cast<unsigned>(dom.omega(l))));
        cx.q_pow.push_back(ipow(cx.q, static_cast<unsigned>(dom.omega(l))));
    }
    return cx;
}

// Number of k in Z with (k q)^{w_l} * B <= A * p^{w_l}, i.e. |k| <= m.
inline BigInt last_axis_count(const CountContext& cx, int l, const BigInt& A, const BigInt& B) {
    const auto lu = static_cast<std::size_t>(l);
    BigInt m = floor_root(A * cx.p_pow[lu], B * cx.q_pow[lu],
                          static_cast<unsigned>(cx.dom->omega(l)));
    return 2 * m + 1;
}

inline BigInt count_rec(const CountContext& cx, int l, const BigInt& A, const BigInt& B) {
    const int d = cx.dom->dimension;
    if (l == d - 1) return last_axis_count(cx, l, A, B);
    const auto lu = static_cast<std::size_t>(l);
    const unsigned wl = static_cast<unsigned>(cx.dom->omega(l));
    const BigInt reach = floor_root(A * cx.p_pow[lu], B * cx.q_pow[lu], wl);
    BigInt total = count_rec(cx, l + 1, A, B);  // k_l = 0 leaves the budget unchanged
    const BigInt Bp = B * cx.p_pow[lu];
    for (BigInt k = 1; k <= reach; ++k) {
        BigInt Ap = A * cx.p_pow[lu] - B * ipow(k * cx.q, wl);
        total += 2 * count_rec(cx, l + 1, Ap, Bp);  // +-k by symmetry
    }
    return total;
}

}  // namespace detail

// Exact #(tD ∩ Z^d).  The outermost axis is split across threads; each range
// accumulates an exact integer, so the result is schedule-independent.
inline BigInt count_exact(const DomainSpec& dom, const BigRat& t, unsigned threads = 0) {
    const auto cx = detail::make_count_context(dom, t);
    const int d = dom.dimension;
    if (d == 1) return detail::last_axis_count(cx, 0, 1, 1);

    const BigInt reach = floor_root(cx.p_pow[0], cx.q_pow[0],
                                    static_cast<unsigned>(dom.omega(0)));
    threads = resolve_threads(threads);
    const std::size_t n = reach.convert_to<std::size_t>() + 1;  // k_1 in [0, reach]
    std::vector<BigInt> partial(n);
    parallel_for(n, threads, [&](std::size_t idx) {
        const BigInt k(static_cast<unsigned long>(idx));
        if (k == 0) {
            partial[idx] = detail::count_rec(cx, 1, 1, 1);
        } else {
            BigInt Ap = cx.p_pow[0] - ipow(k * cx.q, static_cast<unsigned>(dom.omega(0)));
            partial[idx] = 2 * detail::count_rec(cx, 1, Ap, cx.p_pow[0]);
        }
    });
    BigInt total = 0;
    for (const BigInt& v : partial) total += v;
    return total;
}

// Brute-force oracle: full box sweep with per-point exact rational membership.
// Refuses floor(t) > 200 to keep the O(t^d) loop bounded.
inline BigInt count_bruteforce(const DomainSpec& dom, const BigRat& t) {
    if (t <= 0) throw std::invalid_argument("count_bruteforce: t must be > 0");
    const BigInt M = floor_rat(t);
    if (M > 200)
        throw guard_error("count_bruteforce: floor(t) = " + M.str() +
                          " exceeds the guard of 200 (O(t^d) loop)");
    const int d = dom.dimension;
    const long mlim = M.convert_to<long>();

    BigInt total = 0;
    std::vector<long> k(static_cast<std::size_t>(d), -mlim);
    const BigRat one(1);
    std::function<void(int, BigRat)> sweep = [&](int axis, BigRat partial) {
        if (partial > one) return;  // no deeper k can shrink the partial sum
        if (axis == d) {
            ++total;
            return;
        }
        const unsigned w = static_cast<unsigned>(dom.omega(axis));
        for (long v = -mlim; v <= mlim; ++v) {
            BigRat term(ipow(BigInt(v) * denominator(t), w), ipow(numerator(t), w));
            sweep(axis + 1, partial + term);
        }
    };
    sweep(0, BigRat(0));
    return total;
}

inline DiscrepancyRecord discrepancy(const DomainSpec& dom, const BigRat& t,
                                     unsigned threads = 0) {
    if (t < 1) throw std::invalid_argument("discrepancy: t must be >= 1");
    DiscrepancyRecord rec;
    rec.t = t;
    rec.count = count_exact(dom, t, threads);
    const double td = to_double(t);
    rec.volume_term = volume(dom) * std::pow(td, dom.dimension);
    rec.discrepancy = to_double(rec.count) - rec.volume_term;
    return rec;
}

// Scan in input order; records are computed in parallel but stored by index.
inline std::vector<DiscrepancyRecord> discrepancy_scan(const DomainSpec& dom,
                                                       const std::vector<BigRat>& t_values,
                                                       unsigned threads = 0) {
    std::vector<DiscrepancyRecord> out(t_values.size());
    std::vector<std::string> errors(t_values.size());
    parallel_for(t_values.size(), threads, [&](std::size_t i) {
        try {
            out[i] = discrepancy(dom, t_values[i], 1);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (!errors[i].empty())
            throw std::invalid_argument("discrepancy_scan: record " + std::to_string(i) + ": " +
                                        errors[i]);
    return out;
}

}  // namespace supel
