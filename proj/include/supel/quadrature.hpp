#pragma once

// Adaptive 1-D quadrature on a Gauss(7)/Kronrod(15) pair, QUADPACK style:
// keep a worst-first heap of panels and split until the summed error
// estimate meets the tolerance.  Oscillatory integrands are handled by
// seeding the heap with panels no wider than a fraction of the wavelength
// (callers pass `initial_panels`).

#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "supel/common.hpp"

namespace supel {

namespace qk {

// 15-point Kronrod abscissae (positive half) and weights; embedded 7-point
// Gauss weights sit at the odd-indexed abscissae.
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

}  // namespace qk

struct PanelResult {
    double value = 0.0;
    double error = 0.0;
    double resabs = 0.0;
};

template <class F>
PanelResult gk15_panel(F&& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double halflen = 0.5 * (b - a);

    double fv[15];
    const double fc = f(center);
    fv[7] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = halflen * qk::xgk[i];
        fv[i] = f(center - dx);
        fv[14 - i] = f(center + dx);
    }

    double resk = qk::wgk[7] * fc;
    double resg = qk::wg[3] * fc;
    double resabs = std::fabs(resk);
    for (int i = 0; i < 7; ++i) {
        const double fsum = fv[i] + fv[14 - i];
        resk += qk::wgk[i] * fsum;
        resabs += qk::wgk[i] * (std::fabs(fv[i]) + std::fabs(fv[14 - i]));
        if (i % 2 == 1) resg += qk::wg[i / 2] * fsum;
    }
    const double mean = 0.5 * resk;
    double resasc = qk::wgk[7] * std::fabs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += qk::wgk[i] * (std::fabs(fv[i] - mean) + std::fabs(fv[14 - i] - mean));

    PanelResult out;
    out.value = resk * halflen;
    out.resabs = resabs * std::fabs(halflen);
    resasc *= std::fabs(halflen);

    double err = std::fabs((resk - resg) * halflen);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (out.resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(eps * 50.0 * out.resabs, err);
    out.error = err;
    return out;
}

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int initial_panels = 1;
    std::size_t max_panels = 20000;
};

struct QuadOutcome {
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
    bool converged = false;
};

template <class F>
QuadOutcome integrate_adaptive(F&& f, double a, double b, const QuadOptions& opt = {}) {
    QuadOutcome out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    std::priority_queue<Panel> heap;

    double total = 0.0, total_err = 0.0;
    const int n0 = std::max(1, opt.initial_panels);
    for (int i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / n0;
        const double pb = a + (b - a) * static_cast<double>(i + 1) / n0;
        PanelResult r = gk15_panel(f, pa, pb);
        heap.push({pa, pb, r.value, r.error});
        total += r.value;
        total_err += r.error;
    }
    std::size_t panels = static_cast<std::size_t>(n0);

    auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)); };
    while (total_err > target() && panels < opt.max_panels && !heap.empty()) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // panel is at roundoff width; its estimate stays counted but it
            // leaves the heap and is never split again
            continue;
        }
        PanelResult left = gk15_panel(f, worst.a, mid);
        PanelResult right = gk15_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        ++panels;
    }

    out.value = total;
    out.error = total_err;
    out.panels = panels;
    out.converged = total_err <= target();
    return out;
}

// Convenience wrapper that throws on non-convergence.
template <class F>
QuadOutcome integrate_or_throw(F&& f, double a, double b, const QuadOptions& opt,
                               const char* who) {
    QuadOutcome r = integrate_adaptive(f, a, b, opt);
    if (!r.converged)
        throw numeric_error(std::string(who) + ": quadrature did not reach tolerance (error " +
                            std::to_string(r.error) + ", partial value " +
                            std::to_string(r.value) + ")");
    return r;
}

}  // namespace supel
