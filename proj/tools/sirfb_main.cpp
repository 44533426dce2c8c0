#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sirfb/analysis.hpp"
#include "sirfb/config.hpp"
#include "sirfb/eigen.hpp"
#include "sirfb/errors.hpp"
#include "sirfb/model.hpp"
#include "sirfb/output.hpp"
#include "sirfb/solver.hpp"

namespace {

using namespace sirfb;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;
constexpr int kExitBracket = 3;

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void print_thresholds(const ThresholdReport& th) {
    std::cout << "r0=" << fmt(th.r0) << "\n"
              << "k0=" << fmt(th.k0) << "\n"
              << "c1=" << fmt(th.c1) << "\n"
              << "big_m=" << fmt(th.big_m) << "\n"
              << "gamma=" << fmt(th.gamma) << "\n"
              << "h0_star=" << fmt(th.h0_star) << "\n"
              << "h0_vanish_bound=" << fmt(th.h0_vanish_bound) << "\n"
              << "mu_vanish_bound=" << fmt(th.mu_vanish_bound) << "\n"
              << "h0_vanish_bound_d2=" << fmt(th.h0_vanish_bound_d2) << "\n"
              << "mu_vanish_bound_d2=" << fmt(th.mu_vanish_bound_d2) << "\n";
}

const char* regime(const ScenarioConfig& cfg, const ThresholdReport& th) {
    if (th.r0 < 1.0) return "VANISHING (subcritical: r0 < 1)";
    if (th.r0 > 1.0 && cfg.h0 <= th.h0_vanish_bound &&
        cfg.params.mu <= th.mu_vanish_bound) {
        return "VANISHING (small initial radius and expansion coefficient)";
    }
    if (th.r0 > 1.0 && cfg.h0 > th.h0_star) return "SPREADING (h0 > h0_star)";
    return "UNDETERMINED";
}

int cmd_run(const std::string& config_path, bool fixed_domain, bool dump,
            const std::string& out_override) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    if (dump) {
        std::cout << dump_config(cfg);
        return kExitOk;
    }
    const InitialData init = build_initial_data(cfg);
    const GridSpec grid = build_grid(cfg);
    if (const std::string w = grid.validate(); !w.empty()) std::cerr << "warning: " << w << "\n";

    TimeStepConfig ts = cfg.ts;
    if (!cfg.profiles_dir.empty()) ts.save_profiles = true;

    const RunOutcome out = fixed_domain ? run_fixed_domain(cfg.params, init, grid, ts)
                                        : run(cfg.params, init, grid, ts);

    const std::string series_path = !out_override.empty() ? out_override : cfg.series_path;
    if (!series_path.empty()) write_series_csv(series_path, out.series);
    if (!cfg.profiles_dir.empty()) write_profile_csvs(cfg.profiles_dir, out.profiles, grid);
    if (!cfg.svg_path.empty()) write_svg_chart(cfg.svg_path, out.series);

    print_thresholds(out.thresholds);
    if (!out.ok) {
        std::cerr << "solver error: " << out.error << "\n";
        return kExitSolver;
    }
    const Frame& last = out.series.back();
    std::cout << "t_end=" << fmt(last.t) << " h=" << fmt(last.h)
              << " sup_I=" << fmt(last.sup_I) << "\n";
    std::cout << "classification=" << to_string(out.classification) << "\n";
    return kExitOk;
}

int cmd_thresholds(const std::string& config_path) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    const ThresholdReport th = thresholds(cfg.params, build_initial_data(cfg));
    print_thresholds(th);
    std::cout << "regime=" << regime(cfg, th) << "\n";
    return kExitOk;
}

ScenarioConfig with_param(ScenarioConfig cfg, const std::string& param, double value) {
    if (param == "h0") {
        cfg.h0 = value;
    } else if (param == "mu") {
        cfg.params.mu = value;
    } else if (param == "beta") {
        cfg.params.beta = value;
    } else if (param == "b") {
        cfg.params.b = value;
    } else {
        throw ConfigError("sweep: unsupported parameter '" + param +
                          "' (one of h0, mu, beta, b)");
    }
    return cfg;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              double from, double to, int steps, bool bisect, int iterations,
              int workers, const std::string& out_path) {
    ScenarioConfig base;
    try {
        base = parse_config_file(config_path);
        base.validate();
        with_param(base, param, from).validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    if (bisect) {
        if (param != "h0") {
            std::cerr << "config error: --bisect supports only --param h0\n";
            return kExitConfig;
        }
        try {
            const auto init_for = [&base](double h0) {
                return build_initial_data(with_param(base, "h0", h0));
            };
            const auto grid_for = [&base](double h0) {
                return build_grid(with_param(base, "h0", h0));
            };
            const SweepResult res = sweep_critical_h0(base.params, init_for, grid_for,
                                                      base.ts, from, to, iterations);
            std::cout << "bracket_lo=" << fmt(res.lo) << "\n"
                      << "bracket_hi=" << fmt(res.hi) << "\n"
                      << "h0_star=" << fmt(res.h0_star) << "\n";
            return kExitOk;
        } catch (const BracketError& e) {
            std::cerr << "bracket error: " << e.what() << "\n";
            return kExitBracket;
        } catch (const std::exception& e) {
            std::cerr << "solver error: " << e.what() << "\n";
            return kExitSolver;
        }
    }

    std::vector<double> values;
    if (steps <= 1) {
        values.push_back(from);
    } else {
        for (int i = 0; i < steps; ++i) {
            values.push_back(from + (to - from) * i / (steps - 1));
        }
    }

    struct Row {
        double value;
        std::string label;
        double h_end = 0, sup_i_end = 0;
    };
    const auto evaluate = [&base, &param](double v) {
        Row row{v, "", 0, 0};
        try {
            const ScenarioConfig cfg = with_param(base, param, v);
            cfg.validate();
            const RunOutcome out = run(cfg.params, build_initial_data(cfg),
                                       build_grid(cfg), cfg.ts);
            if (!out.ok) {
                row.label = "ERROR";
                return row;
            }
            row.label = to_string(out.classification);
            row.h_end = out.series.back().h;
            row.sup_i_end = out.series.back().sup_I;
        } catch (const std::exception&) {
            row.label = "ERROR";
        }
        return row;
    };

    // bounded concurrency: dispatch in batches of `workers`, results
    // aggregated in value order
    std::vector<Row> rows(values.size());
    for (std::size_t base_idx = 0; base_idx < values.size();
         base_idx += static_cast<std::size_t>(workers)) {
        const std::size_t batch =
            std::min(values.size() - base_idx, static_cast<std::size_t>(workers));
        std::vector<std::future<Row>> inflight;
        inflight.reserve(batch);
        for (std::size_t k = 0; k < batch; ++k) {
            inflight.push_back(
                std::async(std::launch::async, evaluate, values[base_idx + k]));
        }
        for (std::size_t k = 0; k < batch; ++k) rows[base_idx + k] = inflight[k].get();
    }

    std::ostringstream os;
    os << param << ",classification,h_end,sup_I_end\n";
    for (const Row& r : rows) {
        os << fmt(r.value) << ',' << r.label << ',' << fmt(r.h_end) << ','
           << fmt(r.sup_i_end) << '\n';
    }
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        f << os.str();
    }
    return kExitOk;
}

int cmd_eig(int n, double R) {
    try {
        std::cout << fmt(lambda1({R, n}), "%.12g") << "\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

int cmd_ode(const std::string& config_path, const std::string& out_path) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    const InitialData init = build_initial_data(cfg);
    const OdeState y0{init.S0(0.0), init.I0(0.0), init.R0(0.0)};
    try {
        const OdeTrajectory traj = integrate_ode(y0, cfg.params, cfg.ts.t_end,
                                                 cfg.ts.dt, cfg.ts.save_stride);
        if (!out_path.empty()) {
            std::ofstream f(out_path, std::ios::binary);
            f << "t,S,I,R\n";
            for (std::size_t k = 0; k < traj.t.size(); ++k) {
                f << fmt(traj.t[k]) << ',' << fmt(traj.y[k].s) << ','
                  << fmt(traj.y[k].i) << ',' << fmt(traj.y[k].r) << '\n';
            }
        }
        const OdeState& yT = traj.terminal();
        std::cout << "r0=" << fmt(compute_r0(cfg.params)) << "\n"
                  << "S=" << fmt(yT.s) << " I=" << fmt(yT.i) << " R=" << fmt(yT.r)
                  << "\n";
        return kExitOk;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    }
}

int cmd_convergence(const std::string& config_path, int levels) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config_file(config_path);
        cfg.validate();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::vector<RunOutcome> outs;
    for (int lvl = 0; lvl < levels; ++lvl) {
        ScenarioConfig c = cfg;
        const int f = 1 << lvl;
        c.N_h *= f;
        c.N_L *= f;
        c.ts.dt /= f;
        c.ts.save_stride *= f; // frames land at the same times on every level
        const RunOutcome out = run(c.params, build_initial_data(c), build_grid(c), c.ts);
        if (!out.ok) {
            std::cerr << "solver error at level " << lvl << ": " << out.error << "\n";
            return kExitSolver;
        }
        outs.push_back(out);
        std::cout << "level=" << lvl << " N_h=" << c.N_h << " dt=" << fmt(c.ts.dt)
                  << " h_end=" << fmt(out.series.back().h) << "\n";
    }
    for (int lvl = 0; lvl + 2 < levels; ++lvl) {
        const double e1 = std::abs(outs[lvl].series.back().h -
                                   outs[lvl + 1].series.back().h);
        const double e2 = std::abs(outs[lvl + 1].series.back().h -
                                   outs[lvl + 2].series.back().h);
        std::cout << "observed_order_h=" << fmt(std::log2(e1 / e2), "%.3f") << "\n";
    }
    // residual refinement ratios at sample times
    for (const double t_probe : {1.0, 5.0, 10.0}) {
        if (t_probe > cfg.ts.t_end) continue;
        std::vector<double> res;
        for (const RunOutcome& out : outs) {
            const auto it = std::min_element(
                out.series.begin(), out.series.end(), [t_probe](const Frame& a, const Frame& b) {
                    return std::abs(a.t - t_probe) < std::abs(b.t - t_probe);
                });
            res.push_back(it->balance_residual);
        }
        std::cout << "residual_t" << t_probe << "=";
        for (std::size_t i = 0; i < res.size(); ++i) {
            std::cout << (i ? "," : "") << fmt(res[i], "%.6g");
        }
        for (std::size_t i = 0; i + 1 < res.size(); ++i) {
            std::cout << " ratio=" << fmt(res[i] / res[i + 1], "%.3f");
        }
        std::cout << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-boundary SIR epidemic laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_path, param = "h0";
    bool fixed_domain = false, dump = false, bisect = false;
    double from = 0, to = 0, R = 1;
    int steps = 1, iterations = 8, workers = 4, n = 1, levels = 3;

    auto* c_run = app.add_subcommand("run", "simulate a scenario");
    c_run->add_option("config", config_path)->required();
    c_run->add_flag("--fixed-domain", fixed_domain, "fixed ball, zero-flux boundary");
    c_run->add_flag("--dump-config", dump, "print the parsed config and exit");
    c_run->add_option("--out", out_path, "time-series CSV path (overrides config)");

    auto* c_th = app.add_subcommand("thresholds", "print the threshold report");
    c_th->add_option("config", config_path)->required();

    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep or bisection");
    c_sweep->add_option("config", config_path)->required();
    c_sweep->add_option("--param", param, "h0, mu, beta or b");
    c_sweep->add_option("--from", from)->required();
    c_sweep->add_option("--to", to)->required();
    c_sweep->add_option("--steps", steps);
    c_sweep->add_flag("--bisect", bisect, "bisect for the critical h0");
    c_sweep->add_option("--iters", iterations, "bisection iterations");
    c_sweep->add_option("--workers", workers, "concurrent runs");
    c_sweep->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* c_eig = app.add_subcommand("eig", "principal Dirichlet eigenvalue of the ball");
    c_eig->add_option("--n", n)->required();
    c_eig->add_option("--R", R)->required();

    auto* c_ode = app.add_subcommand("ode", "spatially homogeneous reference model");
    c_ode->add_option("config", config_path)->required();
    c_ode->add_option("--out", out_path, "trajectory CSV path");

    auto* c_conv = app.add_subcommand("convergence", "refinement study");
    c_conv->add_option("config", config_path)->required();
    c_conv->add_option("--levels", levels);

    CLI11_PARSE(app, argc, argv);

    if (c_run->parsed()) return cmd_run(config_path, fixed_domain, dump, out_path);
    if (c_th->parsed()) return cmd_thresholds(config_path);
    if (c_sweep->parsed()) {
        return cmd_sweep(config_path, param, from, to, steps, bisect, iterations,
                         workers, out_path);
    }
    if (c_eig->parsed()) return cmd_eig(n, R);
    if (c_ode->parsed()) return cmd_ode(config_path, out_path);
    if (c_conv->parsed()) return cmd_convergence(config_path, levels);
    return kExitConfig;
}
