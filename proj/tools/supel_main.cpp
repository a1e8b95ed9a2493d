// supel — lattice point counts, discrepancy scans, and Fourier-decay
// experiments for even super-ellipsoids.  See README.md for the CSV schemas.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "supel/experiments.hpp"

namespace {

void add_common(CLI::App* cmd, supel::ExperimentConfig& cfg) {
    cmd->add_option("--dim", cfg.dim, "dimension d")->check(CLI::PositiveNumber);
    cmd->add_option("--omegas", cfg.omegas,
                    "comma-separated even exponents w_1,...,w_d")
        ->delimiter(',');
    cmd->add_option("--out", cfg.out, "output CSV path (summary at <out>.summary.json)");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
    cmd->add_option("--seed", cfg.seed, "seed for sampled directions");
    cmd->set_config("--config", "", "key=value config file; flags override it");
}

void add_t_grid(CLI::App* cmd, supel::ExperimentConfig& cfg) {
    cmd->add_option("--t-min", cfg.t_min, "first t (rational p/q accepted)");
    cmd->add_option("--t-max", cfg.t_max, "last t (rational p/q accepted)");
    cmd->add_option("--t-step", cfg.t_step, "t increment (rational p/q accepted)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lattice point laboratory for even super-ellipsoids"};
    app.require_subcommand(1);

    supel::ExperimentConfig cfg;

    CLI::App* count = app.add_subcommand("count", "exact #(tD ∩ Z^d)");
    add_common(count, cfg);
    count->add_option("--t", cfg.t, "dilation t (rational p/q accepted)");

    CLI::App* scan = app.add_subcommand("scan", "discrepancy scan over a t grid");
    add_common(scan, cfg);
    add_t_grid(scan, cfg);
    scan->add_option("--windows", cfg.windows, "dyadic windows for the envelope fit");

    CLI::App* fourier = app.add_subcommand("fourier", "indicator transform decay sweep");
    add_common(fourier, cfg);
    fourier->add_option("--direction", cfg.direction, "unit direction (comma list)")
        ->delimiter(',');
    fourier->add_option("--lambda-list", cfg.lambda_list, "frequencies")->delimiter(',');
    fourier->add_option("--tol", cfg.tol, "quadrature tolerance");
    fourier->add_option("--samples", cfg.samples, "extra random admissible directions");
    fourier->add_option("--c-min", cfg.c_min, "admissibility cutoff (0 = (2d)^{-1/2})");

    CLI::App* cap = app.add_subcommand("cap", "boundary cap measures at delta = 1/lambda");
    add_common(cap, cfg);
    cap->add_option("--direction", cfg.direction, "unit direction (comma list)")->delimiter(',');
    cap->add_option("--lambda-list", cfg.lambda_list, "frequencies")->delimiter(',');
    cap->add_option("--tol", cfg.tol, "quadrature tolerance");
    cap->add_option("--samples", cfg.samples, "extra random admissible directions");
    cap->add_option("--c-min", cfg.c_min, "admissibility cutoff (0 = (2d)^{-1/2})");

    CLI::App* axis = app.add_subcommand("axis", "axis frequency sums I and II");
    add_common(axis, cfg);
    add_t_grid(axis, cfg);
    axis->add_option("--epsilon", cfg.epsilon, "mollifier scale (0 = t^{-(d-1)/(d+1)})");
    axis->add_option("--kmax", cfg.kmax, "axis frequency cutoff");
    axis->add_option("--tol", cfg.tol, "quadrature tolerance");

    CLI::App* sandwich = app.add_subcommand("sandwich", "smoothed-count bracket table");
    add_common(sandwich, cfg);
    add_t_grid(sandwich, cfg);
    sandwich->add_option("--epsilon", cfg.epsilon, "mollifier scale (0 = t^{-(d-1)/(d+1)})");

    CLI::App* table = app.add_subcommand("table", "discrepancy exponent table");
    add_common(table, cfg);

    CLI11_PARSE(app, argc, argv);

    cfg.experiment = app.get_subcommands().front()->get_name();
    try {
        return supel::run(cfg).exit_code;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = {{"experiment", cfg.experiment}, {"message", e.what()}};
        std::fprintf(stderr, "%s\n", err.dump().c_str());
        return 1;
    }
}
