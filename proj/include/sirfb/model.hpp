#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sirfb {

/// Epidemiological and diffusion constants of the radially symmetric
/// free-boundary SIR system.
struct ModelParams {
    double b;     ///< recruitment rate (individuals/time)
    double beta;  ///< contact rate (1/(density*time))
    double mu1;   ///< death rate, susceptible class (1/time)
    double mu2;   ///< death rate, infected class (1/time)
    double mu3;   ///< death rate, recovered class (1/time)
    double alpha; ///< recovery rate (1/time)
    double d1;    ///< diffusion coefficient of S (length^2/time)
    double d2;    ///< diffusion coefficient of I (length^2/time)
    double d3;    ///< diffusion coefficient of R (length^2/time)
    double mu;    ///< Stefan expansion coefficient (length^2/(density*time))
    int n = 1;    ///< spatial dimension, 1..3

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Initial profiles and initial infected radius. Profiles are radial
/// evaluators: S0 on [0, L], I0 and R0 on [0, h0] (zero beyond h0).
struct InitialData {
    double h0;
    std::function<double(double)> S0;
    std::function<double(double)> I0;
    std::function<double(double)> R0;

    double sup_S0 = 0;   ///< sup of S0 over its domain
    double sup_I0 = 0;
    double sup_R0 = 0;
    double i0_slope = 0; ///< sup of |I0'| on [0, h0]

    /// Samples the profiles and checks nonnegativity, I0(h0)=0, R0(h0)=0,
    /// I0>0 on [0,h0), and zero slope at r=0. Throws ConfigError.
    void validate() const;
};

/// Bump initial data: I0 = i0_amp*(1-(r/h0)^2), same shape for R0,
/// constant S0. Sup fields and i0_slope are filled analytically.
InitialData make_bump_initial_data(double h0, double s0_const, double i0_amp,
                                   double r0_amp = 0.0);

/// Derived threshold quantities of the model.
struct ThresholdReport {
    double r0;              ///< basic reproduction number b*beta/(mu1*(mu2+alpha))
    double k0;              ///< beta*C1 - mu2 - alpha
    double c1;              ///< max(sup S0, b/mu1)
    double big_m;           ///< supersolution amplitude (4/3)*max(sup I0, sup R0)
    double gamma;           ///< supersolution decay rate d/(16 h0^2)
    double h0_star;         ///< critical radius; +inf when r0 <= 1
    double h0_vanish_bound; ///< min(sqrt(d/(16 k0)), sqrt(d/(16 alpha))), d = min(d2,d3)
    double mu_vanish_bound; ///< d/(8 M), d = min(d2,d3)
    double d_used;          ///< min(d2, d3)
    // Variant with d2 alone in place of min(d2,d3), reported alongside
    // for comparison.
    double h0_vanish_bound_d2;
    double mu_vanish_bound_d2;
};

/// Closed-form upper solution: hbar(t) = 2h0(2 - e^{-gamma t}),
/// Ibar = M e^{-gamma t} (1 - (r/hbar)^2) on [0, hbar], Rbar identical,
/// Sbar = C1.
struct Supersolution {
    double h0;
    double big_m;
    double gamma;
    double c1;
    bool hypotheses_ok = false;     ///< h0 and mu within the vanishing bounds
    std::string hypothesis_report;  ///< human-readable verdict

    double h_bar(double t) const;
    double s_bar(double r, double t) const;
    double i_bar(double r, double t) const;
    double r_bar(double r, double t) const;
};

double compute_r0(const ModelParams& p);

/// Spatially homogeneous SIR state.
struct OdeState {
    double s, i, r;
};

/// RHS of the ODE system: (b - beta*S*I - mu1*S, beta*S*I - (mu2+alpha)*I,
/// alpha*I - mu3*R).
OdeState ode_rhs(const OdeState& y, const ModelParams& p);

struct OdeTrajectory {
    std::vector<double> t;
    std::vector<OdeState> y;
    const OdeState& terminal() const { return y.back(); }
};

/// Classical 4th-order fixed-step integration; samples every `stride` steps.
/// Throws SolverError if a component drops below -1e-12 (dt too large).
OdeTrajectory integrate_ode(const OdeState& init, const ModelParams& p,
                            double t_end, double dt, int stride = 1);

/// Endemic equilibrium for r0 > 1: S* = (mu2+alpha)/beta,
/// I* = mu1(r0-1)/beta, R* = alpha I*/mu3.
OdeState endemic_equilibrium(const ModelParams& p);

/// Fills every ThresholdReport field from the parameters and initial data.
ThresholdReport thresholds(const ModelParams& p, const InitialData& init);

/// Builds the closed-form upper solution and checks its hypotheses
/// (r0 > 1, h0 and mu below the computed bounds). Evaluators are returned
/// even when a hypothesis fails; the report says which one.
Supersolution build_supersolution(const ModelParams& p, const InitialData& init,
                                  const ThresholdReport& report);

/// Front-speed bound C3 = 2*M*C2*mu with
/// M = max(sqrt(beta*c1/(2 d2)), 4*i0_slope/(3*c2)).
/// Returns 0 in the degenerate case where both max arguments vanish.
double front_speed_bound(const ModelParams& p, double c1, double c2, double i0_slope);

} // namespace sirfb
