#include "sirfb/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sirfb/eigen.hpp"
#include "sirfb/errors.hpp"

namespace sirfb {

namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "ModelParams." << name << ": must be strictly positive (got " << v << ")";
        throw ConfigError(os.str());
    }
}

} // namespace

void ModelParams::validate() const {
    require_positive(b, "b");
    require_positive(beta, "beta");
    require_positive(mu1, "mu1");
    require_positive(mu2, "mu2");
    require_positive(mu3, "mu3");
    require_positive(alpha, "alpha");
    require_positive(d1, "d1");
    require_positive(d2, "d2");
    require_positive(d3, "d3");
    require_positive(mu, "mu");
    if (!(mu1 < std::min(mu2, mu3))) {
        throw ConfigError("ModelParams.mu1: must satisfy mu1 < min(mu2, mu3)");
    }
    if (n < 1 || n > 3) {
        throw ConfigError("ModelParams.n: supported dimensions are 1, 2 and 3");
    }
}

void InitialData::validate() const {
    if (!(h0 > 0)) throw ConfigError("InitialData.h0: must be positive");
    const int samples = 512;
    for (int i = 0; i <= samples; ++i) {
        const double r = h0 * i / samples;
        const double iv = I0(r), rv = R0(r), sv = S0(r);
        if (sv < 0) throw ConfigError("InitialData.S0: negative value");
        if (iv < 0) throw ConfigError("InitialData.I0: negative value");
        if (rv < 0) throw ConfigError("InitialData.R0: negative value");
        if (i < samples && !(iv > 0)) {
            throw ConfigError("InitialData.I0: must be strictly positive on [0, h0)");
        }
    }
    const double tol = 1e-9 * std::max(1.0, sup_I0);
    if (std::abs(I0(h0)) > tol) throw ConfigError("InitialData.I0: I0(h0) must be 0");
    if (std::abs(R0(h0)) > tol) throw ConfigError("InitialData.R0: R0(h0) must be 0");
    const double eps = 1e-6 * h0;
    if (std::abs(I0(eps) - I0(0.0)) > 1e-3 * eps / h0 * std::max(1.0, sup_I0) + 1e-12) {
        // zero slope at the axis within the sampling resolution
        throw ConfigError("InitialData.I0: slope at r=0 must vanish (radial symmetry)");
    }
}

InitialData make_bump_initial_data(double h0, double s0_const, double i0_amp,
                                   double r0_amp) {
    InitialData d;
    d.h0 = h0;
    d.S0 = [s0_const](double) { return s0_const; };
    d.I0 = [h0, i0_amp](double r) {
        const double y = r / h0;
        return r >= h0 ? 0.0 : i0_amp * (1.0 - y * y);
    };
    d.R0 = [h0, r0_amp](double r) {
        const double y = r / h0;
        return r >= h0 ? 0.0 : r0_amp * (1.0 - y * y);
    };
    d.sup_S0 = s0_const;
    d.sup_I0 = i0_amp;
    d.sup_R0 = r0_amp;
    d.i0_slope = 2.0 * i0_amp / h0; // |d/dr a(1-(r/h0)^2)| peaks at r=h0
    return d;
}

double compute_r0(const ModelParams& p) {
    return p.b * p.beta / (p.mu1 * (p.mu2 + p.alpha));
}

OdeState ode_rhs(const OdeState& y, const ModelParams& p) {
    return {p.b - p.beta * y.s * y.i - p.mu1 * y.s,
            p.beta * y.s * y.i - (p.mu2 + p.alpha) * y.i,
            p.alpha * y.i - p.mu3 * y.r};
}

OdeState endemic_equilibrium(const ModelParams& p) {
    const double r0 = compute_r0(p);
    const double istar = p.mu1 * (r0 - 1.0) / p.beta;
    return {(p.mu2 + p.alpha) / p.beta, istar, p.alpha * istar / p.mu3};
}

OdeTrajectory integrate_ode(const OdeState& init, const ModelParams& p,
                            double t_end, double dt, int stride) {
    if (!(dt > 0) || !(t_end > 0)) {
        throw ConfigError("integrate_ode: dt and t_end must be positive");
    }
    const auto axpy = [](const OdeState& y, double a, const OdeState& k) {
        return OdeState{y.s + a * k.s, y.i + a * k.i, y.r + a * k.r};
    };
    OdeTrajectory traj;
    OdeState y = init;
    traj.t.push_back(0.0);
    traj.y.push_back(y);
    const long nsteps = std::lround(t_end / dt);
    for (long k = 1; k <= nsteps; ++k) {
        const OdeState k1 = ode_rhs(y, p);
        const OdeState k2 = ode_rhs(axpy(y, 0.5 * dt, k1), p);
        const OdeState k3 = ode_rhs(axpy(y, 0.5 * dt, k2), p);
        const OdeState k4 = ode_rhs(axpy(y, dt, k3), p);
        y = {y.s + dt / 6.0 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
             y.i + dt / 6.0 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i),
             y.r + dt / 6.0 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r)};
        if (y.s < -1e-12 || y.i < -1e-12 || y.r < -1e-12) {
            throw SolverError("integrate_ode: negative component, dt too large", k * dt);
        }
        if (k % stride == 0 || k == nsteps) {
            traj.t.push_back(k * dt);
            traj.y.push_back(y);
        }
    }
    return traj;
}

ThresholdReport thresholds(const ModelParams& p, const InitialData& init) {
    ThresholdReport th{};
    th.r0 = compute_r0(p);
    th.c1 = std::max(init.sup_S0, p.b / p.mu1);
    th.k0 = p.beta * th.c1 - p.mu2 - p.alpha;
    th.big_m = 4.0 / 3.0 * std::max(init.sup_I0, init.sup_R0);
    th.d_used = std::min(p.d2, p.d3);
    th.gamma = th.d_used / (16.0 * init.h0 * init.h0);

    const auto h0_bound = [&p, &th](double d) {
        const double from_alpha = std::sqrt(d / (16.0 * p.alpha));
        if (th.k0 <= 0) return from_alpha;
        return std::min(std::sqrt(d / (16.0 * th.k0)), from_alpha);
    };
    th.h0_vanish_bound = h0_bound(th.d_used);
    th.h0_vanish_bound_d2 = h0_bound(p.d2);
    const double inf = std::numeric_limits<double>::infinity();
    th.mu_vanish_bound = th.big_m > 0 ? th.d_used / (8.0 * th.big_m) : inf;
    th.mu_vanish_bound_d2 = th.big_m > 0 ? p.d2 / (8.0 * th.big_m) : inf;
    th.h0_star = th.r0 > 1.0 ? critical_radius(p) : inf;
    return th;
}

double Supersolution::h_bar(double t) const {
    return 2.0 * h0 * (2.0 - std::exp(-gamma * t));
}

double Supersolution::s_bar(double, double) const { return c1; }

double Supersolution::i_bar(double r, double t) const {
    const double hb = h_bar(t);
    if (r >= hb) return 0.0;
    const double y = r / hb;
    return big_m * std::exp(-gamma * t) * (1.0 - y * y);
}

double Supersolution::r_bar(double r, double t) const { return i_bar(r, t); }

Supersolution build_supersolution(const ModelParams& p, const InitialData& init,
                                  const ThresholdReport& report) {
    Supersolution s;
    s.h0 = init.h0;
    s.big_m = report.big_m;
    s.gamma = report.gamma;
    s.c1 = report.c1;

    std::ostringstream os;
    bool ok = true;
    if (!(report.r0 > 1.0)) {
        ok = false;
        os << "r0 <= 1 (construction targets the r0 > 1 regime); ";
    }
    if (!(report.k0 > 0)) {
        ok = false;
        os << "k0 <= 0; ";
    }
    if (init.h0 > report.h0_vanish_bound) {
        ok = false;
        os << "h0 exceeds the vanishing bound " << report.h0_vanish_bound << "; ";
    }
    if (p.mu > report.mu_vanish_bound) {
        ok = false;
        os << "mu exceeds the vanishing bound " << report.mu_vanish_bound << "; ";
    }
    s.hypotheses_ok = ok;
    s.hypothesis_report = ok ? "all hypotheses hold" : os.str();
    return s;
}

double front_speed_bound(const ModelParams& p, double c1, double c2, double i0_slope) {
    if (!(c1 >= 0) || !(c2 > 0)) {
        throw ConfigError("front_speed_bound: c1 must be >= 0 and c2 > 0");
    }
    const double m = std::max(std::sqrt(p.beta * c1 / (2.0 * p.d2)),
                              4.0 * i0_slope / (3.0 * c2));
    return 2.0 * m * c2 * p.mu;
}

} // namespace sirfb
