#pragma once

// Log-log regression helpers.  Envelope growth rates are measured the only
// way that works for sign-changing oscillating data: take the max magnitude
// per dyadic window, then fit log(max) against log(window center).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace supel {

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
    std::vector<double> window_centers;
};

// Least squares of log(y) vs log(x); x, y must be positive.
inline ExponentFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("fit_loglog: need at least two (x, y) samples");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(xs.size());
    std::vector<double> lx(xs.size()), ly(ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_loglog: samples must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (!(std::fabs(denom) > 0.0))
        throw std::invalid_argument("fit_loglog: degenerate abscissae (all x equal)");
    ExponentFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::fabs(ly[i] - (fit.slope * lx[i] + fit.intercept));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    fit.window_centers = xs;
    return fit;
}

// Dyadic-window max-envelope fit of |value| against t.
// Requires >= 3*windows samples whose t-range spans a factor >= 8.
inline ExponentFit fit_envelope_xy(const std::vector<double>& ts,
                                   const std::vector<double>& magnitudes, int windows) {
    if (windows < 1) throw std::invalid_argument("fit_envelope: windows must be >= 1");
    if (ts.size() != magnitudes.size())
        throw std::invalid_argument("fit_envelope: size mismatch");
    if (ts.size() < 3 * static_cast<std::size_t>(windows))
        throw std::invalid_argument("fit_envelope: need at least 3*windows records");
    double tmin = ts[0], tmax = ts[0];
    for (double t : ts) {
        if (!(t > 0.0)) throw std::invalid_argument("fit_envelope: t must be positive");
        tmin = std::min(tmin, t);
        tmax = std::max(tmax, t);
    }
    if (!(tmax >= 8.0 * tmin))
        throw std::invalid_argument("fit_envelope: t-range must span a factor >= 8");

    const double ratio = std::log(tmax / tmin);
    std::vector<double> peak(static_cast<std::size_t>(windows), 0.0);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        int w = static_cast<int>(std::floor(std::log(ts[i] / tmin) / ratio * windows));
        w = std::clamp(w, 0, windows - 1);
        peak[static_cast<std::size_t>(w)] = std::max(peak[static_cast<std::size_t>(w)],
                                                     std::fabs(magnitudes[i]));
    }
    std::vector<double> centers, values;
    for (int w = 0; w < windows; ++w) {
        if (peak[static_cast<std::size_t>(w)] <= 0.0) continue;  // empty window
        const double lo = tmin * std::exp(ratio * w / windows);
        const double hi = tmin * std::exp(ratio * (w + 1) / windows);
        centers.push_back(std::sqrt(lo * hi));
        values.push_back(peak[static_cast<std::size_t>(w)]);
    }
    if (centers.size() < 3)
        throw std::invalid_argument("fit_envelope: fewer than 3 usable windows");
    ExponentFit fit = fit_loglog(centers, values);
    fit.window_centers = centers;
    return fit;
}

}  // namespace supel
