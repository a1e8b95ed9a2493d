#pragma once

// The standard compactly supported radial bump
//   rho(y) = exp(-1/(1 - |y|^2)) / Z   on |y| < 1,   0 outside,
// normalized so that its integral over R^d is 1.  Compact support is what
// makes the smoothed-count sandwich work; a Gaussian would not do.
//
// rho^ is radial and real.  It is tabulated once per dimension on a uniform
// radial grid and interpolated with a Catmull-Rom cubic; everything past the
// table edge is treated as 0 and covered by the decay certificates below.

#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "supel/common.hpp"
#include "supel/quadrature.hpp"

namespace supel {

struct Mollifier {
    int dim = 0;
    double normalization = 0.0;  // Z with rho = profile/Z
    double support_radius = 1.0;
    double grid_step = 0.0;       // radial spacing of hat_table
    double grid_max = 0.0;        // largest tabulated radius
    std::vector<double> hat_table;  // rho^ at r = 0, h, 2h, ...

    // unnormalized radial profile
    static double profile(double s) {
        const double u = 1.0 - s * s;
        return u > 0.0 ? std::exp(-1.0 / u) : 0.0;
    }
};

namespace detail {

// angular factor of the radial Fourier kernel: integral over S^{d-1} of
// exp(-2 pi i r s <u, e>) reduces to these classical kernels
inline double radial_kernel(int d, double x) {
    switch (d) {
        case 1:
            return std::cos(x);
        case 2:
            return std::cyl_bessel_j(0.0, x);
        case 3:
            return x == 0.0 ? 1.0 : std::sin(x) / x;
        default:
            throw guard_error("mollifier: radial kernel implemented for d <= 3");
    }
}

inline double sphere_factor(int d) {
    switch (d) {
        case 1:
            return 2.0;
        case 2:
            return kTwoPi;
        case 3:
            return 4.0 * kPi;
        default:
            throw guard_error("mollifier: d <= 3 only");
    }
}

}  // namespace detail

// Direct quadrature of rho^ at radius r (no table).  Real by radial symmetry.
inline double rho_hat_exact(const Mollifier& m, double r, double tol = 1e-10) {
    const int d = m.dim;
    auto f = [&](double s) {
        return Mollifier::profile(s) * std::pow(s, d - 1) *
               detail::radial_kernel(d, kTwoPi * r * s);
    };
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = 0.0;
    opt.initial_panels = std::max(8, static_cast<int>(4.0 * r) + 4);
    QuadOutcome q = integrate_or_throw(f, 0.0, 1.0, opt, "rho_hat_exact");
    return detail::sphere_factor(d) * q.value / m.normalization;
}

inline Mollifier make_mollifier(int d, double grid_step = 1.0 / 128.0, double grid_max = 24.0,
                                double tol = 1e-10) {
    if (d < 1 || d > 3) throw guard_error("make_mollifier: d must be in {1, 2, 3}");
    Mollifier m;
    m.dim = d;
    auto mass = [&](double s) { return Mollifier::profile(s) * std::pow(s, d - 1); };
    QuadOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    m.normalization = detail::sphere_factor(d) * integrate_or_throw(mass, 0.0, 1.0, opt,
                                                                    "make_mollifier").value;
    m.grid_step = grid_step;
    m.grid_max = grid_max;
    const std::size_t nodes = static_cast<std::size_t>(std::floor(grid_max / grid_step)) + 1;
    m.hat_table.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i)
        m.hat_table[i] = rho_hat_exact(m, static_cast<double>(i) * grid_step, tol);
    return m;
}

// rho^ at xi via the radial table with Catmull-Rom interpolation; radii past
// the table are mapped to 0 (see decay certificates).
inline double rho_hat(const Mollifier& m, double radius) {
    radius = std::fabs(radius);
    if (radius >= m.grid_max) return 0.0;
    const double x = radius / m.grid_step;
    const auto i = static_cast<std::ptrdiff_t>(x);
    const double u = x - static_cast<double>(i);
    const auto n = static_cast<std::ptrdiff_t>(m.hat_table.size());
    auto node = [&](std::ptrdiff_t k) {
        if (k < 0) k = -k;  // rho^ is even in the radius
        if (k >= n) k = n - 1;
        return m.hat_table[static_cast<std::size_t>(k)];
    };
    const double p0 = node(i - 1), p1 = node(i), p2 = node(i + 1), p3 = node(i + 2);
    return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                          u * (3.0 * (p1 - p2) + p3 - p0)));
}

inline double rho_hat(const Mollifier& m, const std::vector<double>& xi) {
    double norm2 = 0.0;
    for (double c : xi) norm2 += c * c;
    return rho_hat(m, std::sqrt(norm2));
}

// max |rho^| over table nodes at radius >= r: a checked decay certificate.
inline double rho_hat_tail_bound(const Mollifier& m, double r) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.hat_table.size(); ++i)
        if (static_cast<double>(i) * m.grid_step >= r)
            worst = std::max(worst, std::fabs(m.hat_table[i]));
    return worst;
}

// smallest M with |rho^(r)| <= M (1+r)^{-p} at every table node; used to
// bound truncation tails of frequency sums (the table certifies the range
// it covers, smoothness of rho supplies the decay beyond it).
inline double rho_hat_poly_coeff(const Mollifier& m, int p) {
    double coeff = 0.0;
    for (std::size_t i = 0; i < m.hat_table.size(); ++i) {
        const double r = static_cast<double>(i) * m.grid_step;
        coeff = std::max(coeff, std::fabs(m.hat_table[i]) * std::pow(1.0 + r, p));
    }
    return coeff;
}

// Shared per-dimension instance (the table costs a few million kernel
// evaluations; frequency sums hit it millions of times).
inline const Mollifier& standard_mollifier(int d) {
    static std::mutex guard;
    static std::shared_ptr<Mollifier> cache[4];
    if (d < 1 || d > 3) throw guard_error("standard_mollifier: d must be in {1, 2, 3}");
    std::lock_guard<std::mutex> lock(guard);
    if (!cache[d]) cache[d] = std::make_shared<Mollifier>(make_mollifier(d));
    return *cache[d];
}

}  // namespace supel
