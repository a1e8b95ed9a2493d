#pragma once

// Mollified lattice counting
//   N_eps(t) = sum_{k in Z^d} (chi_{tD} * rho_eps)(k),
// evaluated two independent ways:
//   space side: classify each lattice point against (t -+ eps)D and run a
//     d-dimensional quadrature only on the boundary shell;
//   frequency side: vol(D) t^d + t^d sum_{k != 0} chi_D^(tk) rho^(eps k),
//     truncated at |k|_inf <= K with a certified tail estimate.
// Their agreement is the Poisson summation identity; their ordering against
// the exact count is the sandwich inequality.  Since the closed unit ball is
// contained in D, k in (t-eps)D already implies B(k,eps) subset tD, so the
// sandwich constant C = 1 is admissible for this family.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "supel/bigint.hpp"
#include "supel/common.hpp"
#include "supel/domain.hpp"
#include "supel/fourier.hpp"
#include "supel/lattice.hpp"
#include "supel/mollifier.hpp"
#include "supel/quadrature.hpp"

namespace supel {

struct SmoothedCount {
    double t = 0.0;
    double epsilon = 0.0;
    double value_space = std::numeric_limits<double>::quiet_NaN();
    double value_freq = 0.0;
    int truncation_K = 0;
    double est_error = 0.0;
};

namespace detail {

// Cumulative bump slices H(r, x) = integral_0^x profile(sqrt(u^2 + r^2)) du
// on a uniform (r, x) grid.  The profile vanishes to infinite order at the
// unit sphere, so H is smooth on the whole square and bicubic interpolation
// is accurate to ~1e-9; shell convolutions hit this millions of times.
class BumpSliceTable {
  public:
    BumpSliceTable() : step_(1.0 / (kNodes - 1)), h_(kNodes * kNodes, 0.0) {
        const int sub = 4;  // Simpson sub-steps per cell
        for (int i = 0; i < kNodes; ++i) {
            const double r2 = square(step_ * i);
            double acc = 0.0;
            for (int jcell = 0; jcell + 1 < kNodes; ++jcell) {
                const double a = step_ * jcell;
                const double hh = step_ / sub;
                for (int s = 0; s < sub; ++s) {
                    const double lo = a + hh * s;
                    acc += hh / 6.0 *
                           (f(lo, r2) + 4.0 * f(lo + 0.5 * hh, r2) + f(lo + hh, r2));
                }
                h_[static_cast<std::size_t>(i) * kNodes + jcell + 1] = acc;
            }
        }
    }

    // integral of profile(sqrt(u^2 + r^2)) over u in [a, b]
    double slice(double r, double a, double b) const {
        if (!(b > a)) return 0.0;
        return eval(r, b) - eval(r, a);
    }

  private:
    static constexpr int kNodes = 513;
    double step_;
    std::vector<double> h_;

    static double square(double v) { return v * v; }
    static double f(double u, double r2) { return Mollifier::profile(std::sqrt(u * u + r2)); }

    double node(int i, int j) const {
        i = std::clamp(i, 0, kNodes - 1);
        // H is odd in x and constant past the grid edge
        double sign = 1.0;
        if (j < 0) {
            j = -j;
            sign = -1.0;
        }
        j = std::min(j, kNodes - 1);
        return sign * h_[static_cast<std::size_t>(i) * kNodes + j];
    }

    static double catmull(double p0, double p1, double p2, double p3, double u) {
        return p1 + 0.5 * u * (p2 - p0 + u * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                                              u * (3.0 * (p1 - p2) + p3 - p0)));
    }

    double eval(double r, double x) const {
        double sign = 1.0;
        if (x < 0.0) {
            x = -x;
            sign = -1.0;
        }
        r = std::clamp(std::fabs(r), 0.0, 1.0);
        if (x > 1.0) x = 1.0;  // profile is 0 past the unit ball
        const double xr = r / step_, xx = x / step_;
        const int i = std::min(static_cast<int>(xr), kNodes - 2);
        const int j = std::min(static_cast<int>(xx), kNodes - 2);
        const double ur = xr - i, ux = xx - j;
        double rows[4];
        for (int di = -1; di <= 2; ++di)
            rows[di + 1] = catmull(node(i + di, j - 1), node(i + di, j), node(i + di, j + 1),
                                   node(i + di, j + 2), ux);
        return sign * catmull(rows[0], rows[1], rows[2], rows[3], ur);
    }
};

inline const BumpSliceTable& bump_slice_table() {
    static const BumpSliceTable table;
    return table;
}

// (chi_{tD} * rho_eps)(k) for a boundary-shell point: the slab of the
// membership inequality along the steepest axis m is a closed-form interval
// in y_m, so only the transverse directions need adaptive panels.
inline double shell_convolution(const DomainSpec& dom, const Mollifier& moll, double t,
                                double eps, const std::vector<double>& k) {
    const int d = dom.dimension;
    int m = 0;
    double best = -1.0;
    for (int l = 0; l < d; ++l) {
        const double g = dom.omega(l) * std::pow(std::fabs(k[static_cast<std::size_t>(l)]), dom.omega(l) - 1);
        if (g > best) {
            best = g;
            m = l;
        }
    }
    const double wm = dom.omega(m);
    const double km = k[static_cast<std::size_t>(m)];
    const double invZ = 1.0 / moll.normalization;
    const BumpSliceTable& table = bump_slice_table();

    auto section = [&](const std::vector<double>& y_rest, double r, double w) {
        double c = 1.0;
        std::size_t idx = 0;
        for (int l = 0; l < d; ++l) {
            if (l == m) continue;
            c -= std::pow((k[static_cast<std::size_t>(l)] - eps * y_rest[idx]) / t, dom.omega(l));
            ++idx;
        }
        if (c <= 0.0) return 0.0;
        const double reach = t * std::pow(c, 1.0 / wm);
        const double alpha = std::max(-w, (km - reach) / eps);
        const double beta = std::min(w, (km + reach) / eps);
        return invZ * table.slice(r, alpha, beta);
    };

    if (d == 2) {
        auto outer = [&](double y1) {
            const double w = std::sqrt(std::max(0.0, 1.0 - y1 * y1));
            return section({y1}, std::fabs(y1), w);
        };
        QuadOptions opt;
        opt.abs_tol = 1e-8;
        opt.rel_tol = 1e-6;
        opt.initial_panels = 8;
        opt.max_panels = 400;
        return integrate_adaptive(outer, -1.0, 1.0, opt).value;
    }

    // d == 3
    auto outer = [&](double ya) {
        const double wa = std::sqrt(std::max(0.0, 1.0 - ya * ya));
        if (wa <= 0.0) return 0.0;
        auto mid = [&](double yb) {
            const double w = std::sqrt(std::max(0.0, 1.0 - ya * ya - yb * yb));
            return section({ya, yb}, std::sqrt(ya * ya + yb * yb), w);
        };
        QuadOptions opt;
        opt.abs_tol = 1e-8;
        opt.rel_tol = 1e-6;
        opt.initial_panels = 6;
        opt.max_panels = 300;
        return integrate_adaptive(mid, -wa, wa, opt).value;
    };
    QuadOptions opt;
    opt.abs_tol = 5e-8;
    opt.rel_tol = 1e-6;
    opt.initial_panels = 6;
    opt.max_panels = 400;
    return integrate_adaptive(outer, -1.0, 1.0, opt).value;
}

// odometer over the box [-M, M]^d restricted to canonical points (first
// nonzero coordinate positive); fn(k, weight) with weight 2 except the origin
template <class Fn>
void for_each_canonical(int d, long M, Fn&& fn) {
    std::vector<long> k(static_cast<std::size_t>(d), 0);
    fn(k, 1.0);  // origin
    while (true) {
        int axis = d - 1;
        while (axis >= 0) {
            ++k[static_cast<std::size_t>(axis)];
            if (k[static_cast<std::size_t>(axis)] <= M) break;
            k[static_cast<std::size_t>(axis)] = -M;
            --axis;
        }
        if (axis < 0) break;
        // canonical: first nonzero coordinate > 0
        int first = 0;
        while (first < d && k[static_cast<std::size_t>(first)] == 0) ++first;
        if (first == d || k[static_cast<std::size_t>(first)] < 0) continue;
        fn(k, 2.0);
    }
}

}  // namespace detail

// Space-domain N_eps(t).  d in {2, 3}; the box sweep reuses the counting
// guard (floor(t + eps) <= 200).
inline double smoothed_count_space(const DomainSpec& dom, double t, double eps,
                                   unsigned threads = 0) {
    const int d = dom.dimension;
    if (d != 2 && d != 3)
        throw guard_error("smoothed_count_space: supported for d in {2, 3} only");
    if (!(t > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("smoothed_count_space: t and eps must be > 0");
    if (!(t - eps > 0.0))
        throw std::invalid_argument("smoothed_count_space: need eps < t");
    const long M = static_cast<long>(std::floor(t + eps));
    if (M > 200)
        throw guard_error("smoothed_count_space: floor(t+eps) = " + std::to_string(M) +
                          " exceeds the guard of 200");

    const Mollifier& moll = standard_mollifier(d);
    const double t_in = t - eps, t_out = t + eps;
    const double margin = 1e-9;

    std::int64_t inside_weight = 0;
    std::vector<std::vector<double>> shell_pts;
    std::vector<double> shell_weights;
    detail::for_each_canonical(d, M, [&](const std::vector<long>& k, double weight) {
        double s_out = 0.0, s_in = 0.0;
        for (int l = 0; l < d; ++l) {
            const double kl = static_cast<double>(k[static_cast<std::size_t>(l)]);
            s_out += std::pow(kl / t_out, dom.omega(l));
            s_in += std::pow(kl / t_in, dom.omega(l));
        }
        if (s_out > 1.0 + margin) return;                 // ball around k misses tD
        if (s_in < 1.0 - margin) {                        // ball around k inside tD
            inside_weight += static_cast<std::int64_t>(weight);
            return;
        }
        std::vector<double> kd(k.begin(), k.end());
        shell_pts.push_back(std::move(kd));
        shell_weights.push_back(weight);
    });

    std::vector<double> contributions(shell_pts.size(), 0.0);
    parallel_for(shell_pts.size(), threads, [&](std::size_t i) {
        contributions[i] = shell_weights[i] * detail::shell_convolution(dom, moll, t, eps,
                                                                        shell_pts[i]);
    });
    return static_cast<double>(inside_weight) + pairwise_sum(contributions);
}

struct FreqCountOptions {
    double ft_tol = 1e-8;
    unsigned threads = 0;
    bool with_space = false;
    int budget_K = 256;
};

// Frequency-domain N_eps(t): vol t^d + t^d sum_{0<|k|_inf<=K} chi^(tk) rho^(eps k).
inline SmoothedCount smoothed_count_freq(const DomainSpec& dom, double t, double eps, int K,
                                         const FreqCountOptions& opts = {}) {
    const int d = dom.dimension;
    if (d != 2 && d != 3)
        throw guard_error("smoothed_count_freq: supported for d in {2, 3} only");
    if (K < 1) throw std::invalid_argument("smoothed_count_freq: K must be >= 1");
    if (K > opts.budget_K)
        throw guard_error("smoothed_count_freq: K = " + std::to_string(K) +
                          " exceeds the term budget " + std::to_string(opts.budget_K));
    if (!(t > 0.0) || !(eps > 0.0))
        throw std::invalid_argument("smoothed_count_freq: t and eps must be > 0");

    const Mollifier& moll = standard_mollifier(d);
    const double vol = volume(dom);
    const double td = std::pow(t, d);
    const double rho_floor = 1e-12;

    // octant enumeration; each sign pattern of the nonzero coordinates gives
    // an equal term (chi^ is even per coordinate, rho^ is radial)
    struct Term {
        std::vector<double> freq;
        double rho = 0.0;
        double mult = 0.0;
    };
    std::vector<Term> terms;
    double skipped_mass = 0.0;
    std::vector<int> k(static_cast<std::size_t>(d), 0);
    while (true) {
        int axis = d - 1;
        while (axis >= 0) {
            ++k[static_cast<std::size_t>(axis)];
            if (k[static_cast<std::size_t>(axis)] <= K) break;
            k[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
        double norm2 = 0.0;
        int nonzero = 0;
        for (int v : k) {
            norm2 += static_cast<double>(v) * v;
            if (v != 0) ++nonzero;
        }
        const double mult = std::pow(2.0, nonzero);
        const double rho = rho_hat(moll, eps * std::sqrt(norm2));
        if (std::fabs(rho) < rho_floor) {
            skipped_mass += mult * vol * rho_floor;
            continue;
        }
        Term term;
        term.freq.assign(k.begin(), k.end());
        for (double& c : term.freq) c *= t;
        term.rho = rho;
        term.mult = mult;
        terms.push_back(std::move(term));
    }

    std::vector<double> values(terms.size(), 0.0), errors(terms.size(), 0.0);
    parallel_for(terms.size(), opts.threads, [&](std::size_t i) {
        FtResult ft = ft_indicator(dom, terms[i].freq, opts.ft_tol);
        values[i] = terms[i].mult * ft.value.real() * terms[i].rho;
        errors[i] = terms[i].mult * ft.est_error * std::fabs(terms[i].rho);
    });

    // tail beyond |k|_inf = K: |chi^| <= vol and the certified polynomial
    // envelope of rho^ (table-checked for eps|k| <= grid_max, smoothness of
    // rho extends it beyond)
    const double m8 = rho_hat_poly_coeff(moll, 8);
    double tail = 0.0;
    for (long s = K + 1; s <= 16L * K + 4096; ++s) {
        const double shell = std::pow(2.0 * s + 1.0, d) - std::pow(2.0 * s - 1.0, d);
        const double term = shell * vol * m8 * std::pow(1.0 + eps * s, -8.0);
        tail += term;
        if (term < 1e-18) break;
    }

    SmoothedCount out;
    out.t = t;
    out.epsilon = eps;
    out.truncation_K = K;
    out.value_freq = vol * td + td * pairwise_sum(values);
    double err = 0.0;
    for (double e : errors) err += e;
    out.est_error = td * (err + skipped_mass + tail);
    if (opts.with_space) out.value_space = smoothed_count_space(dom, t, eps, opts.threads);
    return out;
}

// (N_eps(t - eps), N_eps(t + eps)) with eps = t^{-(d-1)/(d+1)} and C = 1:
// guaranteed to bracket the exact count.
inline std::pair<double, double> sandwich_count_bounds(const DomainSpec& dom, double t,
                                                       unsigned threads = 0) {
    if (!(t >= 2.0)) throw std::invalid_argument("sandwich_count_bounds: t must be >= 2");
    const int d = dom.dimension;
    const double eps = std::pow(t, -(d - 1.0) / (d + 1.0));
    return {smoothed_count_space(dom, t - eps, eps, threads),
            smoothed_count_space(dom, t + eps, eps, threads)};
}

struct AxisSum {
    double I = 0.0;   // t^d sum_{0<|k_d|<=Kmax} chi^(t k_d e_d)
    double II = 0.0;  // same sum weighted by (rho^(eps k_d) - 1)
};

inline AxisSum axis_sum(const DomainSpec& dom, double t, double eps, int kmax,
                        double ft_tol = 1e-9) {
    const int d = dom.dimension;
    if (d != 2 && d != 3) throw guard_error("axis_sum: supported for d in {2, 3} only");
    if (kmax < 4) throw std::invalid_argument("axis_sum: Kmax must be >= 4");
    if (!(t > 0.0) || eps < 0.0) throw std::invalid_argument("axis_sum: need t > 0, eps >= 0");

    const Mollifier& moll = standard_mollifier(d);
    const double td = std::pow(t, d);
    std::vector<double> terms_i, terms_ii;
    for (int kd = 1; kd <= kmax; ++kd) {
        const QuadOutcome ft = ft_axis_profile(dom, d - 1, t * kd, ft_tol);
        terms_i.push_back(2.0 * ft.value);  // +-k_d pair up
        terms_ii.push_back(eps == 0.0 ? 0.0
                                      : 2.0 * ft.value * (rho_hat(moll, eps * kd) - 1.0));
    }
    AxisSum out;
    out.I = td * pairwise_sum(terms_i);
    out.II = td * pairwise_sum(terms_ii);
    return out;
}

struct GSeries {
    double value = 0.0;
    double truncation_error = 0.0;
};

// g(t) = C2 * sum_{k != 0} |k|^{-nu-1} sin(2 pi t |k| - pi nu / 2), truncated
// at Kmax.  The phase is reduced through frac(t) first, which makes the
// period-1 property hold bit-for-bit in floating point.
inline GSeries g_series(const DomainSpec& dom, double t, int kmax, double c2) {
    if (kmax < 1) throw std::invalid_argument("g_series: Kmax must be >= 1");
    const double nu = dom.nu;
    if (!(nu > 0.0))
        throw std::invalid_argument("g_series: nu must be positive (d >= 2)");
    double r = std::fmod(t, 1.0);
    if (r < 0.0) r += 1.0;
    const double phase0 = 0.5 * kPi * nu;
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        const double frac = std::fmod(r * k, 1.0);
        terms.push_back(std::pow(k, -nu - 1.0) * std::sin(kTwoPi * frac - phase0));
    }
    GSeries out;
    out.value = 2.0 * c2 * pairwise_sum(terms);
    out.truncation_error = 2.0 * std::fabs(c2) * std::pow(kmax, -nu) / nu;
    return out;
}

}  // namespace supel
