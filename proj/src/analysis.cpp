#include "sirfb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sirfb/eigen.hpp"
#include "sirfb/errors.hpp"

namespace sirfb {

const char* to_string(Classification c) {
    switch (c) {
        case Classification::SPREADING: return "SPREADING";
        case Classification::VANISHING: return "VANISHING";
        default: return "UNDECIDED";
    }
}

Classification classify(std::span<const Frame> series, const ModelParams&,
                        const ThresholdReport& th,
                        const ClassifyTolerances& tol) {
    if (series.empty()) {
        throw ConfigError("classify: empty series");
    }
    const Frame& last = series.back();
    const double h0 = series.front().h;
    const double t0 = series.front().t;
    const double window_start = last.t - tol.trailing_fraction * (last.t - t0);

    double h_at_window = last.h;
    double min_sup_i = std::numeric_limits<double>::infinity();
    bool window_entered = false;
    for (const Frame& f : series) {
        if (f.t < window_start) continue;
        if (!window_entered) {
            h_at_window = f.h;
            window_entered = true;
        }
        min_sup_i = std::min(min_sup_i, f.sup_I);
    }
    const double trailing_h_gain = last.h - h_at_window;

    if (last.sup_I < tol.sup_i_vanish &&
        trailing_h_gain < tol.front_stagnation * h0) {
        return Classification::VANISHING;
    }
    double spread_h = 4.0 * h0;
    if (std::isfinite(th.h0_star)) spread_h = std::max(spread_h, 2.0 * th.h0_star);
    if (last.h > spread_h && min_sup_i > tol.sup_i_spread) {
        return Classification::SPREADING;
    }
    return Classification::UNDECIDED;
}

double weighted_mass(const ProfileFrame& f, const ModelParams& p,
                     const GridSpec& grid) {
    const std::size_t N = f.v_comp.size() - 1;
    const double dr_map = grid.ds() * f.h / grid.h0; // mapped node spacing
    double m = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        const double r0 = j * dr_map, r1 = (j + 1) * dr_map;
        m += 0.5 * dr_map * (std::pow(r0, p.n - 1) * f.v_comp[j] +
                             std::pow(r1, p.n - 1) * f.v_comp[j + 1]);
    }
    return m;
}

double identity_rhs(const ProfileFrame& f, const ModelParams& p,
                    const GridSpec& grid) {
    SimState s{f.t, f.h, f.S_phys, f.v_comp, f.w_comp};
    const auto cf = cross_interpolate(s, grid);
    const double fg = front_gradient(f.v_comp, grid.ds());
    const double dhdt = std::max(0.0, -p.mu * (grid.h0 / f.h) * fg);

    double integral = 0.0;
    const std::size_t N = f.v_comp.size() - 1;
    const double dr_map = grid.ds() * f.h / grid.h0;
    const auto term = [&](std::size_t j) {
        const double r = j * dr_map;
        return std::pow(r, p.n - 1) * f.v_comp[j] *
               (p.beta * cf.S_comp[j] - p.mu2 - p.alpha);
    };
    for (std::size_t j = 0; j < N; ++j) {
        integral += 0.5 * dr_map * (term(j) + term(j + 1));
    }
    return -(p.d2 / p.mu) * std::pow(f.h, p.n - 1) * dhdt + integral;
}

double mass_balance_residual(const ProfileFrame& a, const ProfileFrame& b,
                             const ModelParams& p, const GridSpec& grid) {
    const double dt = b.t - a.t;
    if (!(dt > 0)) throw ConfigError("mass_balance_residual: frames must be ordered in t");
    const double dmdt = (weighted_mass(b, p, grid) - weighted_mass(a, p, grid)) / dt;
    const double rhs = 0.5 * (identity_rhs(a, p, grid) + identity_rhs(b, p, grid));
    return std::abs(dmdt - rhs);
}

ComparisonReport comparison_check(const RunOutcome& outcome,
                                  const Supersolution& super, double tol) {
    ComparisonReport rep;
    if (outcome.profiles.empty()) {
        rep.detail = "run has no saved profiles";
        return rep;
    }
    const double run_h0 = outcome.profiles.front().h;
    if (!super.hypotheses_ok) {
        rep.detail = "supersolution hypotheses not verified: " + super.hypothesis_report;
        return rep;
    }
    if (!(super.h_bar(0.0) > run_h0)) {
        rep.detail = "hbar(0) <= h0: comparison principle precondition violated";
        return rep;
    }
    rep.preconditions_ok = true;

    const double ds = outcome.profiles.front().h > 0
        ? run_h0 / static_cast<double>(outcome.profiles.front().v_comp.size() - 1)
        : 0.0;
    bool ok = true;
    for (const ProfileFrame& f : outcome.profiles) {
        const double hb = super.h_bar(f.t);
        if (f.h > hb + tol) {
            ok = false;
            rep.max_h_excess = std::max(rep.max_h_excess, f.h - hb);
            if (rep.first_violation_t < 0) rep.first_violation_t = f.t;
        }
        const std::size_t N = f.v_comp.size() - 1;
        for (std::size_t j = 0; j <= N; ++j) {
            const double r = map_to_physical(j * ds, f.h, run_h0);
            const double excess = f.v_comp[j] - super.i_bar(r, f.t);
            if (excess > tol) {
                ok = false;
                rep.max_i_excess = std::max(rep.max_i_excess, excess);
                if (rep.first_violation_t < 0) rep.first_violation_t = f.t;
            }
        }
    }
    rep.pass = ok;
    if (!ok) {
        std::ostringstream os;
        os << "domination violated from t=" << rep.first_violation_t
           << " (max h excess " << rep.max_h_excess << ", max I excess "
           << rep.max_i_excess << ")";
        rep.detail = os.str();
    } else {
        rep.detail = "h(t) <= hbar(t) and I <= Ibar at every saved frame";
    }
    return rep;
}

SweepResult sweep_critical_h0(const std::function<Classification(double)>& classify_at,
                              double lo, double hi, int iterations,
                              double h0_star) {
    if (!(lo > 0) || !(hi > lo)) throw BracketError("sweep: need 0 < lo < hi");
    if (iterations < 0) throw BracketError("sweep: iterations must be >= 0");

    SweepResult res;
    res.h0_star = h0_star;

    const Classification c_lo = classify_at(lo);
    const Classification c_hi = classify_at(hi);
    res.evaluations.emplace_back(lo, c_lo);
    res.evaluations.emplace_back(hi, c_hi);
    if (c_lo == Classification::UNDECIDED || c_hi == Classification::UNDECIDED) {
        throw BracketError("sweep: UNDECIDED at a bracket endpoint; try a longer t_end");
    }
    if (c_lo == c_hi) {
        throw BracketError(std::string("sweep: invalid bracket, both endpoints classify ") +
                           to_string(c_lo));
    }
    // orient so lo carries the vanishing label
    double v_end = c_lo == Classification::VANISHING ? lo : hi;
    double s_end = c_lo == Classification::VANISHING ? hi : lo;

    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (v_end + s_end);
        const Classification c = classify_at(mid);
        res.evaluations.emplace_back(mid, c);
        if (c == Classification::UNDECIDED) {
            throw BracketError("sweep: UNDECIDED at the midpoint; try a longer t_end");
        }
        (c == Classification::VANISHING ? v_end : s_end) = mid;
    }
    res.lo = std::min(v_end, s_end);
    res.hi = std::max(v_end, s_end);
    return res;
}

SweepResult sweep_critical_h0(const ModelParams& p,
                              const std::function<InitialData(double)>& init_for,
                              const std::function<GridSpec(double)>& grid_for,
                              const TimeStepConfig& cfg, double lo, double hi,
                              int iterations) {
    const double r0 = compute_r0(p);
    if (!(r0 > 1.0)) throw BracketError("sweep: requires r0 > 1");
    const double h0_star = critical_radius(p);
    const auto classify_at = [&](double h0) {
        const RunOutcome out = run(p, init_for(h0), grid_for(h0), cfg);
        if (!out.ok) {
            // A front escape with the spreading test already met on the
            // partial series is decisive: h passed 0.95 L > max(4 h0, 2 h0*).
            const Classification partial = classify(out.series, p, out.thresholds);
            if (out.error.find("front escaped") != std::string::npos &&
                partial == Classification::SPREADING) {
                return Classification::SPREADING;
            }
            throw SolverError("sweep run failed: " + out.error, 0.0);
        }
        return out.classification;
    };
    return sweep_critical_h0(classify_at, lo, hi, iterations, h0_star);
}

} // namespace sirfb
