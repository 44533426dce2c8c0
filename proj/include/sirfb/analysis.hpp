#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "sirfb/frontfix.hpp"
#include "sirfb/model.hpp"
#include "sirfb/outcome.hpp"
#include "sirfb/solver.hpp"

namespace sirfb {

struct ClassifyTolerances {
    double sup_i_vanish = 1e-8;      ///< terminal sup I below this => vanished
    double front_stagnation = 1e-4;  ///< trailing h increase below this * h0
    double sup_i_spread = 1e-6;      ///< trailing sup I above this => alive
    double trailing_fraction = 0.1;
};

/// VANISHING / SPREADING / UNDECIDED per the fixed surrogate thresholds:
/// vanishing needs terminal sup I < tol and a stagnant front over the
/// trailing window; spreading needs h(t_end) > max(4 h0, 2 h0*) with
/// sup I staying above tol throughout the trailing window.
Classification classify(std::span<const Frame> series, const ModelParams& p,
                        const ThresholdReport& th,
                        const ClassifyTolerances& tol = {});

/// Weighted infected mass int_0^h r^{n-1} I dr on the mapped grid.
double weighted_mass(const ProfileFrame& f, const ModelParams& p,
                     const GridSpec& grid);

/// RHS of the integral identity:
/// -(d2/mu) h^{n-1} h' + int_0^h I (beta S - mu2 - alpha) r^{n-1} dr.
double identity_rhs(const ProfileFrame& f, const ModelParams& p,
                    const GridSpec& grid);

/// Discrete defect |dm/dt - RHS| between two adjacent frames, RHS taken
/// at the midpoint (average of the two endpoint evaluations).
double mass_balance_residual(const ProfileFrame& a, const ProfileFrame& b,
                             const ModelParams& p, const GridSpec& grid);

struct ComparisonReport {
    bool pass = false;
    bool preconditions_ok = false;
    double max_h_excess = 0;   ///< max over frames of h - hbar
    double max_i_excess = 0;   ///< max over frames/nodes of I - Ibar
    double first_violation_t = -1;
    std::string detail;
};

/// Checks h(t) <= hbar(t) + tol and I(r,t) <= Ibar(r,t) + tol at every
/// saved profile frame and node. Refuses to certify (pass=false,
/// preconditions_ok=false) when the supersolution hypotheses fail or
/// hbar(0) <= h(0).
ComparisonReport comparison_check(const RunOutcome& outcome,
                                  const Supersolution& super, double tol);

struct SweepResult {
    double lo = 0, hi = 0;   ///< final bracketing interval on h0
    double h0_star = 0;      ///< theoretical critical radius for comparison
    std::vector<std::pair<double, Classification>> evaluations;
};

/// Bisection on h0 over full runs of the supplied scenario runner.
/// Throws BracketError when the endpoints classify the same or either is
/// UNDECIDED. iterations = 0 returns the input bracket unchanged (after
/// endpoint validation).
SweepResult sweep_critical_h0(const std::function<Classification(double)>& classify_at,
                              double lo, double hi, int iterations,
                              double h0_star);

/// Convenience overload: bump initial data with the given amplitudes; the
/// grid is rebuilt per h0 via grid_for.
SweepResult sweep_critical_h0(const ModelParams& p,
                              const std::function<InitialData(double)>& init_for,
                              const std::function<GridSpec(double)>& grid_for,
                              const TimeStepConfig& cfg, double lo, double hi,
                              int iterations);

} // namespace sirfb
