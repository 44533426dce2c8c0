#include "sirfb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sirfb/analysis.hpp"
#include "sirfb/errors.hpp"
#include "sirfb/tridiag.hpp"

namespace sirfb {

void TimeStepConfig::validate() const {
    if (!(dt > 0)) throw ConfigError("TimeStepConfig.dt: must be positive");
    if (!(t_end > dt)) throw ConfigError("TimeStepConfig.t_end: must exceed dt");
    if (save_stride < 1) throw ConfigError("TimeStepConfig.save_stride: must be >= 1");
    if (!(dt_safety > 0) || dt_safety > 1) {
        throw ConfigError("TimeStepConfig.dt_safety: must lie in (0, 1]");
    }
    if (!(positivity_tol > 0)) {
        throw ConfigError("TimeStepConfig.positivity_tol: must be positive");
    }
}

namespace {

// Backward-Euler diffusion solve (I - dt*D*Lap) x = rhs on a uniform radial
// grid with the axis limit n*w''(0) at node 0. boundary selects the far-end
// row: Neumann (zero slope via symmetric ghost) or Dirichlet zero (the last
// node is excluded from the solve and pinned to 0).
enum class FarEnd { Neumann, Dirichlet };

void implicit_diffusion(std::vector<double>& rhs, double diff, double dt,
                        double spacing, int n, FarEnd boundary) {
    const std::size_t N = rhs.size() - 1;
    const std::size_t rows = boundary == FarEnd::Dirichlet ? N : N + 1;
    const double c = dt * diff / (spacing * spacing);

    std::vector<double> sub(rows, 0.0), diag(rows, 0.0), sup(rows, 0.0);
    diag[0] = 1.0 + 2.0 * n * c;
    sup[0] = -2.0 * n * c;
    for (std::size_t j = 1; j < rows; ++j) {
        const double drift = (n - 1) * spacing / (2.0 * j * spacing); // (n-1)/(2 r_j) * dx
        sub[j] = -c * (1.0 - drift);
        diag[j] = 1.0 + 2.0 * c;
        sup[j] = -c * (1.0 + drift);
    }
    if (boundary == FarEnd::Neumann) {
        sub[rows - 1] = -2.0 * c;
        sup[rows - 1] = 0.0;
    }
    // Dirichlet: row N-1 couples to x_N = 0, nothing to add to the rhs.

    std::span<double> x(rhs.data(), rows);
    solve_tridiag(sub, diag, sup, x);
    if (boundary == FarEnd::Dirichlet) rhs[N] = 0.0;
}

void enforce_positivity(std::vector<double>& f, double tol, double t,
                        const char* name) {
    for (double& x : f) {
        if (!std::isfinite(x)) throw SolverError(std::string(name) + ": non-finite value", t);
        if (x < 0) {
            if (x < -tol) {
                throw SolverError(std::string(name) +
                                      ": positivity violation, dt too large", t);
            }
            x = 0.0;
        }
    }
}

double field_sup(const std::vector<double>& f) {
    return *std::max_element(f.begin(), f.end());
}

double front_speed(const SimState& state, const ModelParams& p, const GridSpec& grid) {
    const double fg = front_gradient(state.v_comp, grid.ds());
    return std::max(0.0, -p.mu * (grid.h0 / state.h) * fg);
}

ProfileFrame to_profile(const SimState& s) {
    return {s.t, s.h, s.S_phys, s.v_comp, s.w_comp};
}

Frame make_frame(const SimState& s, double residual, const ModelParams& p,
                 const GridSpec& grid) {
    Frame f;
    f.t = s.t;
    f.h = s.h;
    f.dhdt = front_speed(s, p, grid);
    f.sup_S = field_sup(s.S_phys);
    f.sup_I = field_sup(s.v_comp);
    f.sup_R = field_sup(s.w_comp);
    f.mass_I = weighted_mass(to_profile(s), p, grid);
    f.balance_residual = residual;
    return f;
}

} // namespace

SimState make_initial_state(const InitialData& init, const GridSpec& grid) {
    SimState s;
    s.t = 0.0;
    s.h = init.h0;
    s.S_phys.resize(grid.N_L + 1);
    for (int i = 0; i <= grid.N_L; ++i) s.S_phys[i] = init.S0(i * grid.dr());
    s.v_comp.resize(grid.N_h + 1);
    s.w_comp.resize(grid.N_h + 1);
    for (int j = 0; j <= grid.N_h; ++j) {
        s.v_comp[j] = init.I0(j * grid.ds());
        s.w_comp[j] = init.R0(j * grid.ds());
    }
    s.v_comp[grid.N_h] = 0.0;
    s.w_comp[grid.N_h] = 0.0;
    return s;
}

SimState step(const SimState& state, const ModelParams& p,
              const GridSpec& grid, const TimeStepConfig& cfg) {
    const double dt = cfg.dt;
    const double ds = grid.ds();
    const auto cf = cross_interpolate(state, grid); // throws on front escape

    // (i)-(ii) front first, fields then use the old-h coefficients
    const double dhdt = front_speed(state, p, grid);
    SimState next;
    next.t = state.t + dt;
    next.h = state.h + dt * dhdt;

    // S on the physical grid: implicit diffusion, explicit reaction
    next.S_phys.resize(state.S_phys.size());
    for (std::size_t i = 0; i < state.S_phys.size(); ++i) {
        const double s = state.S_phys[i];
        next.S_phys[i] = s + dt * (p.b - p.beta * s * cf.I_phys[i] - p.mu1 * s);
    }
    implicit_diffusion(next.S_phys, p.d1, dt, grid.dr(), grid.n, FarEnd::Neumann);

    // I and R in computational coordinates
    const double adv = dhdt / state.h;
    const auto upwind = [&](const std::vector<double>& v, std::size_t j) {
        // dhdt >= 0 by construction: information enters from the right
        return (v[j + 1] - v[j]) / ds;
    };
    const std::size_t Nh = state.v_comp.size() - 1;
    next.v_comp.resize(Nh + 1);
    next.w_comp.resize(Nh + 1);
    next.v_comp[0] = state.v_comp[0] +
                     dt * state.v_comp[0] * (p.beta * cf.S_comp[0] - p.mu2 - p.alpha);
    next.w_comp[0] = state.w_comp[0] +
                     dt * (p.alpha * state.v_comp[0] - p.mu3 * state.w_comp[0]);
    for (std::size_t j = 1; j < Nh; ++j) {
        const double s = j * ds;
        const double v = state.v_comp[j];
        const double w = state.w_comp[j];
        next.v_comp[j] = v + dt * (adv * s * upwind(state.v_comp, j) +
                                   v * (p.beta * cf.S_comp[j] - p.mu2 - p.alpha));
        next.w_comp[j] = w + dt * (adv * s * upwind(state.w_comp, j) +
                                   p.alpha * v - p.mu3 * w);
    }
    next.v_comp[Nh] = 0.0;
    next.w_comp[Nh] = 0.0;
    const double hh = grid.h0 / state.h;
    implicit_diffusion(next.v_comp, p.d2 * hh * hh, dt, ds, grid.n, FarEnd::Dirichlet);
    implicit_diffusion(next.w_comp, p.d3 * hh * hh, dt, ds, grid.n, FarEnd::Dirichlet);

    enforce_positivity(next.S_phys, cfg.positivity_tol, next.t, "S");
    enforce_positivity(next.v_comp, cfg.positivity_tol, next.t, "I");
    enforce_positivity(next.w_comp, cfg.positivity_tol, next.t, "R");
    return next;
}

double stefan_cfl(const SimState& state, const ModelParams& p,
                  const GridSpec& grid, const TimeStepConfig& cfg) {
    const double dhdt = front_speed(state, p, grid);
    const double reaction = 1.0 / (p.beta * field_sup(state.S_phys) + p.mu2 + p.alpha);
    double limit = reaction;
    if (dhdt > 0) {
        limit = std::min(limit, grid.ds() * state.h / (grid.h0 * dhdt));
    }
    return cfg.dt_safety * limit;
}

RunOutcome run(const ModelParams& p, const InitialData& init,
               const GridSpec& grid, const TimeStepConfig& cfg,
               FrameSink* sink) {
    p.validate();
    init.validate();
    grid.validate();
    cfg.validate();

    RunOutcome out;
    out.thresholds = thresholds(p, init);

    SimState state = make_initial_state(init, grid);
    const auto record = [&](const SimState& s, double residual) {
        out.series.push_back(make_frame(s, residual, p, grid));
        if (sink) sink->on_frame(out.series.back());
        if (cfg.save_profiles) {
            out.profiles.push_back(to_profile(s));
            if (sink) sink->on_profile(out.profiles.back());
        }
    };
    record(state, 0.0);

    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    try {
        for (long k = 1; k <= nsteps; ++k) {
            SimState next = step(state, p, grid, cfg);
            if (k % cfg.save_stride == 0 || k == nsteps) {
                const double res = mass_balance_residual(to_profile(state),
                                                         to_profile(next), p, grid);
                record(next, res);
            }
            state = std::move(next);
        }
    } catch (const SolverError& e) {
        out.ok = false;
        out.error = e.what();
    }
    out.classification = out.ok
        ? classify(out.series, p, out.thresholds)
        : Classification::UNDECIDED;
    return out;
}

RunOutcome run_fixed_domain(const ModelParams& p, const InitialData& init,
                            const GridSpec& grid, const TimeStepConfig& cfg,
                            FrameSink* sink) {
    p.validate();
    grid.validate();
    cfg.validate();

    RunOutcome out;
    out.thresholds = thresholds(p, init);

    // All three fields on the physical grid; the "front" sits at L.
    SimState state;
    state.t = 0.0;
    state.h = grid.L;
    state.S_phys.resize(grid.N_L + 1);
    state.v_comp.resize(grid.N_L + 1);
    state.w_comp.resize(grid.N_L + 1);
    for (int i = 0; i <= grid.N_L; ++i) {
        const double r = i * grid.dr();
        state.S_phys[i] = init.S0(r);
        state.v_comp[i] = init.I0(r);
        state.w_comp[i] = init.R0(r);
    }

    const auto record = [&](const SimState& s) {
        Frame f;
        f.t = s.t;
        f.h = grid.L;
        f.dhdt = 0.0;
        f.sup_S = field_sup(s.S_phys);
        f.sup_I = field_sup(s.v_comp);
        f.sup_R = field_sup(s.w_comp);
        // weighted mass over the full fixed ball
        double m = 0.0;
        const double dr = grid.dr();
        for (int i = 0; i < grid.N_L; ++i) {
            const double r0 = i * dr, r1 = (i + 1) * dr;
            m += 0.5 * dr * (std::pow(r0, grid.n - 1) * s.v_comp[i] +
                             std::pow(r1, grid.n - 1) * s.v_comp[i + 1]);
        }
        f.mass_I = m;
        f.balance_residual = 0.0;
        out.series.push_back(f);
        if (sink) sink->on_frame(f);
        if (cfg.save_profiles) {
            out.profiles.push_back({s.t, grid.L, s.S_phys, s.v_comp, s.w_comp});
            if (sink) sink->on_profile(out.profiles.back());
        }
    };
    record(state);

    const double dt = cfg.dt;
    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    try {
        for (long k = 1; k <= nsteps; ++k) {
            SimState next;
            next.t = state.t + dt;
            next.h = grid.L;
            next.S_phys.resize(state.S_phys.size());
            next.v_comp.resize(state.v_comp.size());
            next.w_comp.resize(state.w_comp.size());
            for (std::size_t i = 0; i < state.S_phys.size(); ++i) {
                const double s = state.S_phys[i];
                const double v = state.v_comp[i];
                const double w = state.w_comp[i];
                next.S_phys[i] = s + dt * (p.b - p.beta * s * v - p.mu1 * s);
                next.v_comp[i] = v + dt * v * (p.beta * s - p.mu2 - p.alpha);
                next.w_comp[i] = w + dt * (p.alpha * v - p.mu3 * w);
            }
            implicit_diffusion(next.S_phys, p.d1, dt, grid.dr(), grid.n, FarEnd::Neumann);
            implicit_diffusion(next.v_comp, p.d2, dt, grid.dr(), grid.n, FarEnd::Neumann);
            implicit_diffusion(next.w_comp, p.d3, dt, grid.dr(), grid.n, FarEnd::Neumann);
            enforce_positivity(next.S_phys, cfg.positivity_tol, next.t, "S");
            enforce_positivity(next.v_comp, cfg.positivity_tol, next.t, "I");
            enforce_positivity(next.w_comp, cfg.positivity_tol, next.t, "R");
            if (k % cfg.save_stride == 0 || k == nsteps) record(next);
            state = std::move(next);
        }
    } catch (const SolverError& e) {
        out.ok = false;
        out.error = e.what();
    }
    out.classification = Classification::UNDECIDED; // no free boundary to classify
    return out;
}

} // namespace sirfb
