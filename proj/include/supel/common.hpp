#pragma once

#include <algorithm>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace supel {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Thrown when an operation refuses to run because a size/dimension guard
// would be exceeded; the message names the guard.
struct guard_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when an iterative numeric procedure fails to reach its target
// residual; the message reports the residual actually achieved.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, n) on up to `threads` worker threads.
// Work is dealt in contiguous blocks; callers own any reduction and must
// make it order-independent (exact sums) or slot-indexed (doubles).
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (n == 0) return;
    if (threads <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Pairwise (cascade) summation: deterministic and far more accurate than a
// running sum for the long term lists produced by frequency sums.
inline double pairwise_sum(const std::vector<double>& v) {
    // recursion bottom: plain loop on short slices
    struct Impl {
        static double run(const double* p, std::size_t n) {
            if (n <= 8) {
                double s = 0.0;
                for (std::size_t i = 0; i < n; ++i) s += p[i];
                return s;
            }
            const std::size_t half = n / 2;
            return run(p, half) + run(p + half, n - half);
        }
    };
    return Impl::run(v.data(), v.size());
}

}  // namespace supel
