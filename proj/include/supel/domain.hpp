#pragma once

// Geometry of the even super-ellipsoid
//   D = { x in R^d : x_1^w1 + ... + x_d^wd <= 1 },  w_l even, w_l >= 2.
// D is convex, symmetric under every coordinate sign flip, contains the
// closed unit ball, and touches each coordinate axis at the unit points.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "supel/common.hpp"

namespace supel {

struct DomainSpec {
    int dimension = 0;
    std::vector<int> exponents;  // (w_1, ..., w_d), each even and >= 2

    int omega_max = 0;      // max_l w_l (the "type" of the boundary)
    double nu = 0.0;        // sum_{l<d} 1/w_l  (axis-d convention)
    std::int64_t nu_num = 0, nu_den = 1;  // nu as an exact fraction
    std::int64_t eta = 1;   // lcm(w_1, ..., w_{d-1}); 1 when d == 1

    DomainSpec() = default;
    explicit DomainSpec(std::vector<int> omegas)
        : dimension(static_cast<int>(omegas.size())), exponents(std::move(omegas)) {
        if (dimension < 1)
            throw std::invalid_argument("DomainSpec: dimension must be >= 1");
        for (int w : exponents) {
            if (w < 2 || w % 2 != 0)
                throw std::invalid_argument(
                    "DomainSpec: every exponent must be an even integer >= 2 (got " +
                    std::to_string(w) + ")");
        }
        omega_max = *std::max_element(exponents.begin(), exponents.end());
        // nu = sum_{l<d} 1/w_l in lowest terms
        std::int64_t num = 0, den = 1;
        for (int l = 0; l + 1 < dimension; ++l) {
            num = num * exponents[l] + den;
            den *= exponents[l];
            std::int64_t g = std::gcd(num, den);
            num /= g;
            den /= g;
        }
        nu_num = num;
        nu_den = den;
        nu = static_cast<double>(num) / static_cast<double>(den);
        eta = 1;
        for (int l = 0; l + 1 < dimension; ++l)
            eta = std::lcm(eta, static_cast<std::int64_t>(exponents[l]));
    }

    int dim() const { return dimension; }
    int omega(int l) const { return exponents[static_cast<std::size_t>(l)]; }
};

inline DomainSpec make_domain(std::vector<int> omegas) { return DomainSpec(std::move(omegas)); }

// sign(v) * |v|^(1/k) for odd k: the unique real k-th root.
inline double odd_root(double v, int k) {
    if (v == 0.0) return 0.0;
    double r = std::pow(std::fabs(v), 1.0 / static_cast<double>(k));
    return v < 0.0 ? -r : r;
}

inline void check_point_dim(const DomainSpec& dom, std::size_t n, const char* who) {
    if (n != static_cast<std::size_t>(dom.dimension))
        throw std::invalid_argument(std::string(who) + ": point dimension mismatch");
}

// sum_l x_l^{w_l}
inline double power_sum(const DomainSpec& dom, const std::vector<double>& x) {
    check_point_dim(dom, x.size(), "power_sum");
    double s = 0.0;
    for (int l = 0; l < dom.dimension; ++l)
        s += std::pow(x[static_cast<std::size_t>(l)], dom.omega(l));
    return s;
}

// Membership of `point` in the dilate tD.  Strict floating-point comparison,
// no tolerance; exact boundary classification belongs to the counting code.
inline bool contains(const DomainSpec& dom, const std::vector<double>& point, double t) {
    check_point_dim(dom, point.size(), "contains");
    if (!(t > 0.0)) throw std::invalid_argument("contains: t must be > 0");
    double s = 0.0;
    for (int l = 0; l < dom.dimension; ++l)
        s += std::pow(point[static_cast<std::size_t>(l)] / t, dom.omega(l));
    return s <= 1.0;
}

// r > 0 with sum (r u_l)^{w_l} = 1 for a unit direction u.  The map is
// strictly increasing in r, so bracket by doubling and bisect.
inline double radial_boundary(const DomainSpec& dom, const std::vector<double>& direction) {
    check_point_dim(dom, direction.size(), "radial_boundary");
    double norm2 = 0.0;
    for (double v : direction) norm2 += v * v;
    if (std::fabs(std::sqrt(norm2) - 1.0) > 1e-9)
        throw std::invalid_argument("radial_boundary: direction must be a unit vector");

    auto f = [&](double r) {
        double s = 0.0;
        for (int l = 0; l < dom.dimension; ++l)
            s += std::pow(r * direction[static_cast<std::size_t>(l)], dom.omega(l));
        return s;
    };
    double hi = 1.0;
    while (f(hi) < 1.0) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-17 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 1.0 ? lo : hi) = mid;
    }
    double r = 0.5 * (lo + hi);
    // one Newton polish; f' = sum w_l u_l^{w_l} r^{w_l - 1} > 0
    double fp = 0.0;
    for (int l = 0; l < dom.dimension; ++l) {
        double u = direction[static_cast<std::size_t>(l)];
        fp += dom.omega(l) * std::pow(u, dom.omega(l)) * std::pow(r, dom.omega(l) - 1);
    }
    if (fp > 0.0) r -= (f(r) - 1.0) / fp;
    double residual = std::fabs(f(r) - 1.0);
    if (residual > 1e-13)
        throw numeric_error("radial_boundary: residual " + std::to_string(residual) +
                            " above 1e-13");
    return r;
}

// vol(D) = 2^d * prod Gamma(1 + 1/w_l) / Gamma(1 + sum 1/w_l).
inline double volume(const DomainSpec& dom) {
    double v = std::pow(2.0, dom.dimension);
    double s = 0.0;
    for (int l = 0; l < dom.dimension; ++l) {
        double inv = 1.0 / static_cast<double>(dom.omega(l));
        v *= std::tgamma(1.0 + inv);
        s += inv;
    }
    return v / std::tgamma(1.0 + s);
}

struct SurfacePoint {
    std::vector<double> coords;
    std::vector<double> unit_normal;
};

// Outward normal direction at x in ∂D: (w_1 x_1^{w_1-1}, ..., w_d x_d^{w_d-1}),
// normalized to unit length.
inline std::vector<double> surface_unit_normal(const DomainSpec& dom,
                                               const std::vector<double>& coords) {
    check_point_dim(dom, coords.size(), "surface_unit_normal");
    std::vector<double> n(coords.size());
    double norm2 = 0.0;
    for (int l = 0; l < dom.dimension; ++l) {
        double g = dom.omega(l) * std::pow(coords[static_cast<std::size_t>(l)], dom.omega(l) - 1);
        n[static_cast<std::size_t>(l)] = g;
        norm2 += g * g;
    }
    if (norm2 == 0.0)
        throw std::invalid_argument("surface_unit_normal: zero gradient (origin is not on the boundary)");
    double inv = 1.0 / std::sqrt(norm2);
    for (double& g : n) g *= inv;
    return n;
}

inline SurfacePoint surface_point_from(const DomainSpec& dom, std::vector<double> coords,
                                       double tol = 1e-8) {
    double residual = std::fabs(power_sum(dom, coords) - 1.0);
    if (residual > tol)
        throw std::invalid_argument("surface_point_from: point is off the boundary (residual " +
                                    std::to_string(residual) + ")");
    SurfacePoint p;
    p.unit_normal = surface_unit_normal(dom, coords);
    p.coords = std::move(coords);
    return p;
}

struct FrequencyVector {
    std::vector<double> xi;
    double lambda = 0.0;        // |xi|
    std::vector<double> unit;   // xi / |xi|
    int dominant_axis = 0;      // argmax_j |xi_j|; always |xi_j| >= (2d)^{-1/2} |xi|

    FrequencyVector() = default;
    explicit FrequencyVector(std::vector<double> v) : xi(std::move(v)) {
        double norm2 = 0.0;
        for (double c : xi) norm2 += c * c;
        lambda = std::sqrt(norm2);
        if (!(lambda > 0.0))
            throw std::invalid_argument("FrequencyVector: xi must be nonzero");
        unit.resize(xi.size());
        for (std::size_t l = 0; l < xi.size(); ++l) unit[l] = xi[l] / lambda;
        dominant_axis = 0;
        for (std::size_t l = 1; l < xi.size(); ++l)
            if (std::fabs(xi[l]) > std::fabs(xi[static_cast<std::size_t>(dominant_axis)]))
                dominant_axis = static_cast<int>(l);
    }
};

// The unique x(xi) on ∂D whose exterior unit normal is xi/|xi|:
// a_l(s) = sign(xi_l) (s |xi_l| / w_l)^{1/(w_l-1)} with s > 0 solving
// sum a_l(s)^{w_l} = 1 (strictly increasing in s).
inline SurfacePoint normal_point(const DomainSpec& dom, const FrequencyVector& xi) {
    check_point_dim(dom, xi.xi.size(), "normal_point");

    auto coords_at = [&](double s) {
        std::vector<double> a(xi.xi.size());
        for (int l = 0; l < dom.dimension; ++l) {
            double v = s * std::fabs(xi.unit[static_cast<std::size_t>(l)]) / dom.omega(l);
            double r = odd_root(v, dom.omega(l) - 1);
            a[static_cast<std::size_t>(l)] = xi.unit[static_cast<std::size_t>(l)] < 0.0 ? -r : r;
        }
        return a;
    };
    auto f = [&](double s) { return power_sum(dom, coords_at(s)); };

    double hi = 1.0;
    int doublings = 0;
    while (f(hi) < 1.0) {
        hi *= 2.0;
        if (++doublings > 200)
            throw numeric_error("normal_point: bracket expansion failed");
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-17 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 1.0 ? lo : hi) = mid;
    }
    double s = 0.5 * (lo + hi);
    double residual = std::fabs(f(s) - 1.0);
    if (residual > 1e-12)
        throw numeric_error("normal_point: bisection residual " + std::to_string(residual) +
                            " above 1e-12");
    SurfacePoint p;
    p.coords = coords_at(s);
    p.unit_normal = surface_unit_normal(dom, p.coords);
    return p;
}

// Signed distance of y from the affine tangent plane at `base`, measured along
// the outward normal: <base - y, n>.  Convexity makes this >= 0 on ∂D up to
// roundoff; values in [-1e-10, 0) are clamped to 0.
inline double tangent_distance(const DomainSpec& dom, const SurfacePoint& base,
                               const std::vector<double>& y, double surface_tol = 1e-8) {
    check_point_dim(dom, y.size(), "tangent_distance");
    double base_res = std::fabs(power_sum(dom, base.coords) - 1.0);
    double y_res = std::fabs(power_sum(dom, y) - 1.0);
    if (base_res > surface_tol || y_res > surface_tol)
        throw std::invalid_argument("tangent_distance: input point is off the boundary");
    double dist = 0.0;
    for (std::size_t l = 0; l < y.size(); ++l)
        dist += (base.coords[l] - y[l]) * base.unit_normal[l];
    if (dist < -1e-10)
        throw std::invalid_argument("tangent_distance: negative distance violates convexity; "
                                    "inputs are inconsistent");
    return dist < 0.0 ? 0.0 : dist;
}

}  // namespace supel
