#pragma once

// Surface measure of boundary caps
//   B~(x(xi), delta) = { y in ∂D : dist(y, T_x) < delta },
// the portion of ∂D cut off by a plane parallel to the tangent plane at the
// normal point x(xi), at distance delta.
//
// ∂D is parametrized as a graph x_j = ±h(x') over the dominant-axis
// coordinate plane, h(x') = (1 - sum_{l != j} x_l^{w_l})^{1/w_j}.  On the
// branch carrying x(xi) the cap condition <n, y> > <n, x(xi)> - delta is a
// superlevel set of a concave function of x', hence convex: its radial
// extent from the projected cap center is found by bisection along rays.
// If the cap reaches the equator {h = 0} it continues onto the mirror
// branch, where the same condition is convex and contributes an annular
// end-piece per ray.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "supel/common.hpp"
#include "supel/domain.hpp"
#include "supel/fourier.hpp"
#include "supel/quadrature.hpp"

namespace supel {

struct CapQuery {
    FrequencyVector xi;
    double delta = 0.0;
    double measure = 0.0;
    double bound = 0.0;  // cap-size bound evaluated at |xi| = 1/delta
};

// prod_{l<d} min(delta^{1/w_l}, (|xi_l|/|xi|)^{-(w_l-2)/(2(w_l-1))} delta^{1/2});
// the minimum takes delta^{1/w_l} when xi_l = 0.
inline double cap_bound(const DomainSpec& dom, const std::vector<double>& xi_unit, double delta) {
    check_point_dim(dom, xi_unit.size(), "cap_bound");
    if (!(delta > 0.0)) throw std::invalid_argument("cap_bound: delta must be > 0");
    double b = 1.0;
    for (int l = 0; l + 1 < dom.dimension; ++l) {
        const double wl = dom.omega(l);
        const double first = std::pow(delta, 1.0 / wl);
        const double al = std::fabs(xi_unit[static_cast<std::size_t>(l)]);
        if (al == 0.0) {
            b *= first;
            continue;
        }
        const double expo = (wl - 2.0) / (2.0 * (wl - 1.0));
        b *= std::min(first, std::pow(al, -expo) * std::sqrt(delta));
    }
    return b;
}

namespace detail {

struct CapFrame {
    const DomainSpec* dom;
    int j;                       // graph axis (dominant axis of xi)
    std::vector<int> rest;       // remaining axis indices
    std::vector<double> n;       // unit normal (xi direction), n[j] > 0
    std::vector<double> center;  // projection of x(xi) onto the x' plane
    double threshold;            // <n, x(xi)> - delta
};

inline double cap_power_sum(const CapFrame& fr, const std::vector<double>& xp) {
    double s = 0.0;
    for (std::size_t i = 0; i < fr.rest.size(); ++i)
        s += std::pow(xp[i], fr.dom->omega(fr.rest[i]));
    return s;
}

inline double cap_height(const CapFrame& fr, const std::vector<double>& xp) {
    const double s = cap_power_sum(fr, xp);
    return std::pow(std::max(0.0, 1.0 - s), 1.0 / fr.dom->omega(fr.j));
}

// sqrt(1 + |grad h|^2); diverges like an integrable power at the equator.
inline double cap_area_element(const CapFrame& fr, const std::vector<double>& xp) {
    const double h = cap_height(fr, xp);
    const double wj = fr.dom->omega(fr.j);
    double g2 = 0.0;
    for (std::size_t i = 0; i < fr.rest.size(); ++i) {
        const double wl = fr.dom->omega(fr.rest[i]);
        const double dh = -(wl / wj) * std::pow(xp[i], wl - 1.0) * std::pow(h, 1.0 - wj);
        g2 += dh * dh;
    }
    return std::sqrt(1.0 + g2);
}

// <n, (x', +-h(x'))> - threshold
inline double cap_margin(const CapFrame& fr, const std::vector<double>& xp, bool positive) {
    double v = 0.0;
    for (std::size_t i = 0; i < fr.rest.size(); ++i)
        v += fr.n[static_cast<std::size_t>(fr.rest[i])] * xp[i];
    const double hj = fr.n[static_cast<std::size_t>(fr.j)] * cap_height(fr, xp);
    return (positive ? v + hj : v - hj) - fr.threshold;
}

// Bisection for f(x) = 0 with f(a) and f(b) of opposite sign; either order.
template <class F>
double bisect(F&& f, double a, double b, int iters = 100) {
    if (a > b) std::swap(a, b);
    double fa = f(a);
    for (int it = 0; it < iters && (b - a) > 0.0; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fa <= 0.0) == (fm <= 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Surface measure of the cap of depth delta at the normal point of xi,
// for d in {2, 3}; fills `bound` with the cap bound at |xi| = 1/delta.
inline CapQuery cap_measure(const DomainSpec& dom, const FrequencyVector& xi, double delta,
                            double tol = 1e-8) {
    const int d = dom.dimension;
    if (d != 2 && d != 3)
        throw guard_error("cap_measure: supported for d in {2, 3} only");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("cap_measure: delta must lie in (0, 1]");
    check_point_dim(dom, xi.xi.size(), "cap_measure");

    const int j = xi.dominant_axis;
    if (xi.xi[static_cast<std::size_t>(j)] < 0.0) {
        // reflect the dominant component; the domain is sign-symmetric
        std::vector<double> flipped = xi.xi;
        flipped[static_cast<std::size_t>(j)] = -flipped[static_cast<std::size_t>(j)];
        CapQuery q = cap_measure(dom, FrequencyVector(flipped), delta, tol);
        q.xi = xi;
        q.bound = cap_bound(dom, xi.unit, delta);
        return q;
    }

    const SurfacePoint x0 = normal_point(dom, xi);
    double support = 0.0;
    for (int l = 0; l < d; ++l)
        support += x0.coords[static_cast<std::size_t>(l)] * xi.unit[static_cast<std::size_t>(l)];

    detail::CapFrame fr;
    fr.dom = &dom;
    fr.j = j;
    fr.n = xi.unit;
    fr.threshold = support - delta;
    for (int l = 0; l < d; ++l)
        if (l != j) {
            fr.rest.push_back(l);
            fr.center.push_back(x0.coords[static_cast<std::size_t>(l)]);
        }

    CapQuery out;
    out.xi = xi;
    out.delta = delta;
    out.bound = cap_bound(dom, xi.unit, delta);

    QuadOptions inner_opt;
    inner_opt.abs_tol = tol * 1e-2;
    inner_opt.rel_tol = 1e-9;
    inner_opt.max_panels = 4000;

    if (d == 2) {
        auto margin_pos = [&](double x) { return detail::cap_margin(fr, {x}, true); };
        auto margin_neg = [&](double x) { return detail::cap_margin(fr, {x}, false); };
        auto arc = [&](double x) { return detail::cap_area_element(fr, {x}); };
        const double x0p = fr.center[0];

        double total = 0.0;
        for (int side = -1; side <= 1; side += 2) {
            const double edge = static_cast<double>(side);
            double stop;
            bool crossed = false;
            if (margin_pos(edge) >= 0.0) {
                stop = edge;
                crossed = true;
            } else {
                stop = detail::bisect(margin_pos, x0p, edge);
            }
            total += integrate_adaptive(arc, std::min(x0p, stop), std::max(x0p, stop),
                                        inner_opt).value;
            if (crossed && margin_neg(x0p) < 0.0) {
                const double z = detail::bisect(margin_neg, x0p, edge);
                total += integrate_adaptive(arc, std::min(z, edge), std::max(z, edge),
                                            inner_opt).value;
            } else if (crossed) {
                // the mirror branch is inside the cap all the way to the center
                total += integrate_adaptive(arc, std::min(x0p, edge), std::max(x0p, edge),
                                            inner_opt).value;
            }
        }
        out.measure = total;
        return out;
    }

    // d == 3: polar sweep around the projected cap center.
    auto ray_contribution = [&](double theta) {
        const double cs = std::cos(theta), sn = std::sin(theta);
        auto at = [&](double r) {
            return std::vector<double>{fr.center[0] + r * cs, fr.center[1] + r * sn};
        };
        auto inside = [&](double r) { return detail::cap_power_sum(fr, at(r)) - 1.0; };
        // radius at which the ray leaves the projected domain; keep the lower
        // bracket end so the integrand stays strictly inside the graph patch
        double lo = 0.0, hi = 0.25;
        while (inside(hi) < 0.0) {
            lo = hi;
            hi *= 2.0;
        }
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (inside(mid) < 0.0 ? lo : hi) = mid;
        }
        const double r_edge = lo;

        auto phi = [&](double r) { return detail::cap_margin(fr, at(r), true); };
        double r_stop;
        bool crossed = false;
        if (phi(r_edge) >= 0.0) {
            r_stop = r_edge;
            crossed = true;
        } else {
            r_stop = detail::bisect(phi, 0.0, r_edge);
        }
        auto weighted = [&](double r) { return detail::cap_area_element(fr, at(r)) * r; };
        double value = integrate_adaptive(weighted, 0.0, r_stop, inner_opt).value;

        if (crossed) {
            auto psi = [&](double r) { return detail::cap_margin(fr, at(r), false); };
            if (psi(0.0) < 0.0) {
                const double z = detail::bisect(psi, 0.0, r_edge);
                value += integrate_adaptive(weighted, z, r_edge, inner_opt).value;
            } else {
                value += integrate_adaptive(weighted, 0.0, r_edge, inner_opt).value;
            }
        }
        return value;
    };

    QuadOptions outer_opt;
    outer_opt.abs_tol = tol * 0.5;
    outer_opt.rel_tol = 1e-8;
    outer_opt.initial_panels = 64;
    outer_opt.max_panels = 4000;
    out.measure = integrate_adaptive(ray_contribution, 0.0, kTwoPi, outer_opt).value;
    return out;
}

}  // namespace supel
