#pragma once

// Experiment drivers behind the CLI: discrepancy scans, transform-decay and
// cap-measure sweeps, axis sums, sandwich tables, exponent tables.  Every
// run writes deterministic CSV (row order = input order, fixed formatting)
// plus a JSON summary, so identical config + seed reproduce identical bytes.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "supel/bigint.hpp"
#include "supel/cap.hpp"
#include "supel/common.hpp"
#include "supel/domain.hpp"
#include "supel/exponents.hpp"
#include "supel/fit.hpp"
#include "supel/fourier.hpp"
#include "supel/lattice.hpp"
#include "supel/poisson.hpp"

namespace supel {

struct ExperimentConfig {
    std::string experiment;  // count | scan | fourier | cap | axis | sandwich | table
    int dim = 2;
    std::vector<int> omegas;
    std::string out;  // CSV path (JSON summary lands at <out>.summary.json)
    unsigned threads = 0;
    std::uint64_t seed = 1;

    std::string t = "2";  // count
    std::string t_min = "2", t_max = "64", t_step = "1";

    std::vector<double> direction;  // fourier/cap; empty = axis e_d
    std::vector<double> lambda_list = {4, 8, 16, 32, 64};
    double tol = 1e-8;
    int samples = 0;     // extra random admissible directions
    double c_min = 0.0;  // admissibility cutoff; 0 = (2d)^{-1/2}

    double epsilon = 0.0;  // axis/sandwich; 0 = t^{-(d-1)/(d+1)}
    int kmax = 12;
    int windows = 4;
};

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_rational(const BigRat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

struct CsvWriter {
    std::ofstream stream;
    explicit CsvWriter(const std::string& path, const std::string& header) {
        stream.open(path, std::ios::binary | std::ios::trunc);
        if (!stream) throw std::invalid_argument("cannot open output file '" + path + "'");
        stream << header << "\n";
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            stream << (i ? "," : "") << cells[i];
        stream << "\n";
    }
};

inline std::vector<BigRat> t_grid(const ExperimentConfig& cfg) {
    const BigRat lo = parse_rational(cfg.t_min);
    const BigRat hi = parse_rational(cfg.t_max);
    const BigRat step = parse_rational(cfg.t_step);
    if (step <= 0) throw std::invalid_argument("t-step must be positive");
    std::vector<BigRat> ts;
    for (BigRat t = lo; t <= hi; t += step) ts.push_back(t);
    if (ts.empty()) throw std::invalid_argument("empty t grid (t-min > t-max)");
    return ts;
}

inline double admissibility_cutoff(const ExperimentConfig& cfg, int d) {
    return cfg.c_min > 0.0 ? cfg.c_min : 1.0 / std::sqrt(2.0 * d);
}

// direction list: the configured one (default e_d), plus `samples` seeded
// random unit vectors with |u_d| >= cutoff
inline std::vector<std::vector<double>> direction_list(const ExperimentConfig& cfg, int d) {
    std::vector<std::vector<double>> dirs;
    if (!cfg.direction.empty()) {
        if (cfg.direction.size() != static_cast<std::size_t>(d))
            throw std::invalid_argument("--direction length must equal --dim");
        std::vector<double> u = cfg.direction;
        double norm = 0.0;
        for (double v : u) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0.0)) throw std::invalid_argument("--direction must be nonzero");
        for (double& v : u) v /= norm;
        dirs.push_back(u);
    } else {
        std::vector<double> axis(static_cast<std::size_t>(d), 0.0);
        axis.back() = 1.0;
        dirs.push_back(axis);
    }
    const double cutoff = admissibility_cutoff(cfg, d);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int s = 0; s < cfg.samples; ++s) {
        const double xd = cutoff + (1.0 - cutoff) * std::fabs(uni(rng));
        const double r = std::sqrt(std::max(0.0, 1.0 - xd * xd));
        std::vector<double> u(static_cast<std::size_t>(d), 0.0);
        if (d == 1) {
            u[0] = 1.0;
        } else if (d == 2) {
            u[0] = uni(rng) < 0.0 ? -r : r;
            u[1] = xd;
        } else {
            const double ang = kPi * uni(rng);
            u[0] = r * std::cos(ang);
            u[1] = r * std::sin(ang);
            u[2] = xd;
        }
        dirs.push_back(u);
    }
    return dirs;
}

inline nlohmann::json fit_to_json(const ExponentFit& fit) {
    return {{"slope", fit.slope},
            {"intercept", fit.intercept},
            {"max_residual", fit.max_residual},
            {"window_centers", fit.window_centers}};
}

}  // namespace detail

inline ExponentFit fit_envelope(const std::vector<DiscrepancyRecord>& records, int windows) {
    std::vector<double> ts, ps;
    for (const auto& r : records) {
        ts.push_back(to_double(r.t));
        ps.push_back(std::fabs(r.discrepancy));
    }
    return fit_envelope_xy(ts, ps, windows);
}

struct RunResult {
    int exit_code = 0;
    nlohmann::json summary;
};

inline RunResult run(const ExperimentConfig& cfg) {
    const DomainSpec dom(cfg.omegas.empty()
                             ? std::vector<int>(static_cast<std::size_t>(cfg.dim), 2)
                             : cfg.omegas);
    if (dom.dimension != cfg.dim)
        throw std::invalid_argument("--omegas length must equal --dim");
    const unsigned threads = resolve_threads(cfg.threads);

    nlohmann::json summary;
    summary["experiment"] = cfg.experiment;
    summary["domain"] = {{"dim", dom.dimension}, {"omegas", dom.exponents}};
    summary["seed"] = cfg.seed;

    const std::string csv_path = cfg.out.empty() ? cfg.experiment + ".csv" : cfg.out;

    if (cfg.experiment == "count") {
        const BigRat t = parse_rational(cfg.t);
        const BigInt n = count_exact(dom, t, threads);
        std::printf("%s\n", n.str().c_str());
        summary["t"] = detail::format_rational(t);
        summary["count"] = n.str();
    } else if (cfg.experiment == "scan") {
        const auto ts = detail::t_grid(cfg);
        const auto records = discrepancy_scan(dom, ts, threads);
        detail::CsvWriter csv(csv_path, "t,count,volume_term,discrepancy");
        for (const auto& r : records)
            csv.row({detail::format_rational(r.t), r.count.str(),
                     detail::format_double(r.volume_term), detail::format_double(r.discrepancy)});
        summary["rows"] = records.size();
        summary["csv"] = csv_path;
        const ExponentTable table = dom.dimension >= 2 ? exponent_table(dom) : ExponentTable{};
        if (dom.dimension >= 2) {
            summary["simple_bound"] = table.simple_bound;
            summary["omega_lower"] = table.omega_lower;
        }
        try {
            summary["envelope_fit"] = detail::fit_to_json(fit_envelope(records, cfg.windows));
        } catch (const std::exception& e) {
            summary["envelope_fit"] = {{"skipped", e.what()}};
        }
    } else if (cfg.experiment == "fourier") {
        const auto dirs = detail::direction_list(cfg, dom.dimension);
        const double cutoff = detail::admissibility_cutoff(cfg, dom.dimension);
        struct Row {
            double lambda;
            const std::vector<double>* u;
            double ft_re, ft_im, bound, ratio;
        };
        std::vector<Row> rows;
        for (double lambda : cfg.lambda_list)
            for (const auto& u : dirs)
                rows.push_back({lambda, &u, 0, 0, 0, 0});
        parallel_for(rows.size(), threads, [&](std::size_t i) {
            Row& row = rows[i];
            std::vector<double> xi = *row.u;
            for (double& v : xi) v *= row.lambda;
            const FtResult ft = ft_indicator(dom, xi, cfg.tol);
            row.ft_re = ft.value.real();
            row.ft_im = ft.value.imag();
            const double ud = std::fabs(row.u->back());
            if (ud >= cutoff) {
                row.bound = ft_decay_bound(dom, *row.u, row.lambda, cutoff);
                row.ratio = std::hypot(row.ft_re, row.ft_im) / row.bound;
            } else {
                row.bound = std::numeric_limits<double>::quiet_NaN();
                row.ratio = std::numeric_limits<double>::quiet_NaN();
            }
        });
        std::string header = "lambda";
        for (int l = 1; l <= dom.dimension; ++l) header += ",xi_" + std::to_string(l);
        header += ",ft_real,ft_imag,bound,ratio";
        detail::CsvWriter csv(csv_path, header);
        std::vector<double> max_ratio(cfg.lambda_list.size(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& row = rows[i];
            std::vector<std::string> cells{detail::format_double(row.lambda)};
            for (double v : *row.u) cells.push_back(detail::format_double(v));
            cells.push_back(detail::format_double(row.ft_re));
            cells.push_back(detail::format_double(row.ft_im));
            cells.push_back(detail::format_double(row.bound));
            cells.push_back(detail::format_double(row.ratio));
            csv.row(cells);
            const std::size_t li = i / dirs.size();
            if (row.ratio == row.ratio)
                max_ratio[li] = std::max(max_ratio[li], row.ratio);
        }
        summary["rows"] = rows.size();
        summary["csv"] = csv_path;
        summary["max_ratio_per_lambda"] = max_ratio;
        bool positive = true;
        for (double v : max_ratio) positive = positive && v > 0.0;
        if (cfg.lambda_list.size() >= 2 && positive)
            summary["ratio_slope"] = fit_loglog(cfg.lambda_list, max_ratio).slope;
    } else if (cfg.experiment == "cap") {
        const auto dirs = detail::direction_list(cfg, dom.dimension);
        struct Row {
            double lambda, delta, measure, bound, ratio;
            const std::vector<double>* u;
        };
        std::vector<Row> rows;
        for (double lambda : cfg.lambda_list)
            for (const auto& u : dirs)
                rows.push_back({lambda, 1.0 / lambda, 0, 0, 0, &u});
        parallel_for(rows.size(), threads, [&](std::size_t i) {
            Row& row = rows[i];
            const CapQuery q =
                cap_measure(dom, FrequencyVector(*row.u), row.delta, cfg.tol);
            row.measure = q.measure;
            row.bound = q.bound;
            row.ratio = q.measure / q.bound;
        });
        detail::CsvWriter csv(csv_path, "lambda,delta,measure,bound,ratio");
        std::vector<double> max_ratio(cfg.lambda_list.size(), 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Row& row = rows[i];
            csv.row({detail::format_double(row.lambda), detail::format_double(row.delta),
                     detail::format_double(row.measure), detail::format_double(row.bound),
                     detail::format_double(row.ratio)});
            max_ratio[i / dirs.size()] = std::max(max_ratio[i / dirs.size()], row.ratio);
        }
        summary["rows"] = rows.size();
        summary["csv"] = csv_path;
        summary["max_ratio_per_lambda"] = max_ratio;
        if (cfg.lambda_list.size() >= 2)
            summary["ratio_slope"] = fit_loglog(cfg.lambda_list, max_ratio).slope;
    } else if (cfg.experiment == "axis") {
        const auto ts = detail::t_grid(cfg);
        struct Row {
            double t, eps, I, II, g1;
        };
        std::vector<Row> rows(ts.size());
        parallel_for(ts.size(), threads, [&](std::size_t i) {
            const double t = to_double(ts[i]);
            const double eps =
                cfg.epsilon > 0.0 ? cfg.epsilon
                                  : std::pow(t, -(dom.dimension - 1.0) / (dom.dimension + 1.0));
            const AxisSum s = axis_sum(dom, t, eps, cfg.kmax, std::min(cfg.tol, 1e-9));
            rows[i] = {t, eps, s.I, s.II, g_series(dom, t, 4096, 1.0).value};
        });
        // least-squares C2 matching I * t^{-(d-1-nu)} to the unit-C2 series
        const double power = dom.dimension - 1.0 - dom.nu;
        double num = 0.0, den = 0.0;
        for (const Row& row : rows) {
            const double scaled = row.I * std::pow(row.t, -power);
            num += scaled * row.g1;
            den += row.g1 * row.g1;
        }
        const double c2 = den > 0.0 ? num / den : 0.0;
        detail::CsvWriter csv(csv_path, "t,epsilon,I,II,g_fit");
        for (const Row& row : rows)
            csv.row({detail::format_double(row.t), detail::format_double(row.eps),
                     detail::format_double(row.I), detail::format_double(row.II),
                     detail::format_double(c2 * row.g1)});
        summary["rows"] = rows.size();
        summary["csv"] = csv_path;
        summary["c2_fit"] = c2;
        std::vector<double> tv, ratio;
        for (const Row& row : rows) {
            const double v = std::fabs(row.I) * std::pow(row.t, -power);
            if (v > 0.0) {
                tv.push_back(row.t);
                ratio.push_back(v);
            }
        }
        if (tv.size() >= 2) summary["scaled_I_slope"] = fit_loglog(tv, ratio).slope;
    } else if (cfg.experiment == "sandwich") {
        const auto ts = detail::t_grid(cfg);
        struct Row {
            double t, eps, lower, upper;
            BigInt exact;
        };
        std::vector<Row> rows(ts.size());
        parallel_for(ts.size(), threads, [&](std::size_t i) {
            const double t = to_double(ts[i]);
            const double eps =
                cfg.epsilon > 0.0 ? cfg.epsilon
                                  : std::pow(t, -(dom.dimension - 1.0) / (dom.dimension + 1.0));
            rows[i].t = t;
            rows[i].eps = eps;
            rows[i].lower = smoothed_count_space(dom, t - eps, eps, 1);
            rows[i].upper = smoothed_count_space(dom, t + eps, eps, 1);
            rows[i].exact = count_exact(dom, ts[i], 1);
        });
        detail::CsvWriter csv(csv_path, "t,epsilon,lower,exact,upper");
        int violations = 0;
        for (const Row& row : rows) {
            const double exact = to_double(row.exact);
            if (!(row.lower <= exact && exact <= row.upper)) ++violations;
            csv.row({detail::format_double(row.t), detail::format_double(row.eps),
                     detail::format_double(row.lower), row.exact.str(),
                     detail::format_double(row.upper)});
        }
        summary["rows"] = rows.size();
        summary["csv"] = csv_path;
        summary["violations"] = violations;
        if (violations > 0) {
            std::ofstream json_out(csv_path + ".summary.json", std::ios::binary);
            json_out << summary.dump(2) << "\n";
            throw numeric_error("sandwich: " + std::to_string(violations) +
                                " bracket violations (see " + csv_path + ")");
        }
    } else if (cfg.experiment == "table") {
        const ExponentTable table = exponent_table(dom);
        nlohmann::json first, higher;
        for (const auto& term : table.first_sum)
            first.push_back({{"subset", term.subset}, {"exponent", term.exponent}});
        for (const auto& term : table.higher_terms)
            higher.push_back({{"subset", term.subset}, {"exponent", term.exponent}});
        summary["first_sum"] = first;
        summary["higher_terms"] = higher;
        summary["simple_bound"] = table.simple_bound;
        summary["randol_bound"] = table.randol_bound;
        summary["classical_bound"] = table.classical_bound;
        summary["omega_lower"] = table.omega_lower;
        summary["planar_warning"] = table.planar_warning;
        std::printf("%s\n", summary.dump(2).c_str());
    } else {
        throw std::invalid_argument("unknown experiment '" + cfg.experiment + "'");
    }

    if (!cfg.out.empty() || (cfg.experiment != "count" && cfg.experiment != "table")) {
        std::ofstream json_out(csv_path + ".summary.json", std::ios::binary);
        json_out << summary.dump(2) << "\n";
    }
    return {0, summary};
}

}  // namespace supel
