#pragma once

// Fourier transform of the indicator of D, convention
//   f^(xi) = integral f(x) exp(-2 pi i x.xi) dx.
//
// Because D is symmetric under every coordinate sign flip, the transform is
// real and even in each component.  The integral over the dominant axis j of
// xi is done analytically: a slab of half-length a contributes
// sin(2 pi a xi_j)/(pi xi_j).  What remains is a (d-1)-dimensional integral
// over the projected domain, handled by adaptive panels sized to the local
// oscillation.  Along a coordinate axis the projected integrand is constant
// on the level sets of sum_{l != j} x_l^{w_l}, so the layer-cake substitution
// u = w^{1/nu'} collapses it to a smooth 1-D integral at any frequency.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "supel/domain.hpp"
#include "supel/fit.hpp"
#include "supel/quadrature.hpp"

namespace supel {

struct FtResult {
    FrequencyVector xi;
    std::complex<double> value{0.0, 0.0};
    double est_error = 0.0;
};

namespace detail {

// sin(2 pi a q) / (pi q), the analytic integral of exp(-2 pi i x q) over
// [-a, a]; continuous limit 2a at q = 0.
inline double slab_kernel(double a, double q) {
    if (q == 0.0) return 2.0 * a;
    return std::sin(kTwoPi * a * q) / (kPi * q);
}

inline int oscillation_panels(double cycles) {
    double n = 4.0 * std::fabs(cycles) + 8.0;
    return n > 4000.0 ? 4000 : static_cast<int>(n);
}

}  // namespace detail

// Fourier transform along a coordinate axis: xi = q * e_axis, any |q| > 0.
// Exact 1-D reduction, cheap even at very high frequency.
inline QuadOutcome ft_axis_profile(const DomainSpec& dom, int axis, double q, double tol) {
    const int d = dom.dimension;
    if (d == 1) {
        QuadOutcome out;
        out.value = detail::slab_kernel(1.0, q);
        out.error = 0.0;
        out.converged = true;
        return out;
    }
    std::vector<int> rest;
    for (int l = 0; l < d; ++l)
        if (l != axis) rest.push_back(dom.omega(l));
    const DomainSpec cross(rest);
    const double vol_cross = volume(cross);
    double nu_cross = 0.0;
    for (int w : rest) nu_cross += 1.0 / w;
    const double omega_j = dom.omega(axis);

    auto integrand = [&](double w) {
        // u = w^{1/nu'} absorbs the u^{nu'-1} layer density exactly
        double u = std::pow(w, 1.0 / nu_cross);
        double a = std::pow(std::max(0.0, 1.0 - u), 1.0 / omega_j);
        return detail::slab_kernel(a, q);
    };
    QuadOptions opt;
    opt.abs_tol = tol / std::max(1.0, vol_cross);
    opt.rel_tol = 0.0;
    opt.initial_panels = detail::oscillation_panels(q);
    QuadOutcome r = integrate_adaptive(integrand, 0.0, 1.0, opt);
    r.value *= vol_cross;
    r.error *= vol_cross;
    return r;
}

// chi_D^(xi) for d in {1,2,3}.  tol is an absolute error target.
inline FtResult ft_indicator(const DomainSpec& dom, const FrequencyVector& xi, double tol = 1e-8) {
    const int d = dom.dimension;
    if (d > 3)
        throw guard_error("ft_indicator: quadrature path supports d <= 3 only (got d = " +
                          std::to_string(d) + ")");
    if (!(tol >= 1e-10))
        throw std::invalid_argument("ft_indicator: tol must be >= 1e-10");
    check_point_dim(dom, xi.xi.size(), "ft_indicator");

    FtResult out;
    out.xi = xi;
    const int j = xi.dominant_axis;
    const double qj = xi.xi[static_cast<std::size_t>(j)];

    bool on_axis = true;
    for (int l = 0; l < d; ++l)
        if (l != j && xi.xi[static_cast<std::size_t>(l)] != 0.0) on_axis = false;

    if (d == 1 || on_axis) {
        QuadOutcome r = ft_axis_profile(dom, j, qj, tol);
        out.value = {r.value, 0.0};
        out.est_error = r.error;
        return out;
    }

    if (d == 2) {
        const int m = 1 - j;
        const double qm = xi.xi[static_cast<std::size_t>(m)];
        const double wm = dom.omega(m), wj = dom.omega(j);
        auto integrand = [&](double x) {
            double a = std::pow(std::max(0.0, 1.0 - std::pow(x, wm)), 1.0 / wj);
            return std::cos(kTwoPi * x * qm) * detail::slab_kernel(a, qj);
        };
        QuadOptions opt;
        opt.abs_tol = tol / 2.0;
        opt.rel_tol = 0.0;
        opt.initial_panels = detail::oscillation_panels(std::fabs(qm) + std::fabs(qj));
        QuadOutcome r = integrate_adaptive(integrand, 0.0, 1.0, opt);
        out.value = {2.0 * r.value, 0.0};
        out.est_error = 2.0 * r.error;
        return out;
    }

    // d == 3: remaining axes m1, m2; integrate the quadrant and quadruple.
    int m1 = -1, m2 = -1;
    for (int l = 0; l < 3; ++l)
        if (l != j) (m1 < 0 ? m1 : m2) = l;
    const double q1 = xi.xi[static_cast<std::size_t>(m1)];
    const double q2 = xi.xi[static_cast<std::size_t>(m2)];
    const double w1 = dom.omega(m1), w2 = dom.omega(m2), wj = dom.omega(j);

    const double tol_inner = tol / 16.0;
    const double tol_outer = tol / 16.0;
    double worst_inner_err = 0.0;

    auto outer = [&](double x1) {
        const double cap = std::max(0.0, 1.0 - std::pow(x1, w1));
        const double b = std::pow(cap, 1.0 / w2);
        if (b <= 0.0) return 0.0;
        auto inner = [&](double x2) {
            double a = std::pow(std::max(0.0, cap - std::pow(x2, w2)), 1.0 / wj);
            return std::cos(kTwoPi * x2 * q2) * detail::slab_kernel(a, qj);
        };
        QuadOptions opt;
        opt.abs_tol = tol_inner;
        opt.rel_tol = 0.0;
        opt.initial_panels = detail::oscillation_panels((std::fabs(q2) + std::fabs(qj)) * b);
        QuadOutcome r = integrate_adaptive(inner, 0.0, b, opt);
        worst_inner_err = std::max(worst_inner_err, r.error);
        return std::cos(kTwoPi * x1 * q1) * r.value;
    };
    QuadOptions opt;
    opt.abs_tol = tol_outer;
    opt.rel_tol = 0.0;
    opt.initial_panels = detail::oscillation_panels(std::fabs(q1) + std::fabs(qj));
    QuadOutcome r = integrate_adaptive(outer, 0.0, 1.0, opt);
    out.value = {4.0 * r.value, 0.0};
    out.est_error = 4.0 * (r.error + worst_inner_err);
    return out;
}

// Limit-aware overload: xi = 0 returns vol(D) with zero error.
inline FtResult ft_indicator(const DomainSpec& dom, const std::vector<double>& xi_raw,
                             double tol = 1e-8) {
    double norm2 = 0.0;
    for (double c : xi_raw) norm2 += c * c;
    if (norm2 == 0.0) {
        FtResult out;
        out.value = {volume(dom), 0.0};
        out.est_error = 0.0;
        return out;
    }
    return ft_indicator(dom, FrequencyVector(xi_raw), tol);
}

// Directional decay bound for |chi_D^(lambda xi)|, unit xi with |xi_d| >= c:
//   lambda^{-1} * prod_{l<d} min(lambda^{-1/w_l},
//                                |xi_l|^{-(w_l-2)/(2(w_l-1))} lambda^{-1/2}),
// the minimum taking the value lambda^{-1/w_l} when xi_l = 0.
inline double ft_decay_bound(const DomainSpec& dom, const std::vector<double>& xi_unit,
                             double lambda, double c = 0.0) {
    const int d = dom.dimension;
    check_point_dim(dom, xi_unit.size(), "ft_decay_bound");
    if (!(lambda > 0.0)) throw std::invalid_argument("ft_decay_bound: lambda must be > 0");
    if (c == 0.0) c = 1.0 / std::sqrt(2.0 * d);
    if (!(c > 0.0 && c <= 1.0))
        throw std::invalid_argument("ft_decay_bound: c must lie in (0, 1]");
    double norm2 = 0.0;
    for (double v : xi_unit) norm2 += v * v;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-9)
        throw std::invalid_argument("ft_decay_bound: xi must be a unit vector");
    if (std::fabs(xi_unit[static_cast<std::size_t>(d - 1)]) < c)
        throw std::invalid_argument("ft_decay_bound: |xi_d| >= c required");

    double bound = 1.0 / lambda;
    for (int l = 0; l + 1 < d; ++l) {
        const double wl = dom.omega(l);
        const double first = std::pow(lambda, -1.0 / wl);
        const double al = std::fabs(xi_unit[static_cast<std::size_t>(l)]);
        if (al == 0.0) {
            bound *= first;
            continue;
        }
        const double expo = (wl - 2.0) / (2.0 * (wl - 1.0));
        const double second = std::pow(al, -expo) / std::sqrt(lambda);
        bound *= std::min(first, second);
    }
    return bound;
}

// Leading oscillatory term of the axis-direction transform of the surface
// measure component: C1 * sin(2 pi t |k_d| - pi nu / 2) * (t |k_d|)^{-nu}.
// C1 depends on the cross-section exponents and is supplied by the caller
// (typically fitted from data).
inline double axis_leading_term(const DomainSpec& dom, double t, long long k_d, double c1) {
    if (k_d == 0) throw std::invalid_argument("axis_leading_term: k_d must be nonzero");
    if (!(t >= 1.0)) throw std::invalid_argument("axis_leading_term: t must be >= 1");
    const double k = std::fabs(static_cast<double>(k_d));
    const double nu = dom.nu;
    return c1 * std::sin(kTwoPi * t * k - 0.5 * kPi * nu) * std::pow(t * k, -nu);
}

// Least-squares decay exponent of magnitude vs lambda on log-log axes.
inline ExponentFit decay_fit(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 8)
        throw std::invalid_argument("decay_fit: need at least 8 (lambda, magnitude) samples");
    std::vector<double> xs, ys;
    xs.reserve(samples.size());
    ys.reserve(samples.size());
    for (const auto& [lambda, mag] : samples) {
        if (!(lambda > 0.0) || !(mag > 0.0))
            throw std::invalid_argument("decay_fit: samples must be positive");
        xs.push_back(lambda);
        ys.push_back(mag);
    }
    return fit_loglog(xs, ys);
}

}  // namespace supel
