#pragma once

#include "sirfb/frontfix.hpp"
#include "sirfb/model.hpp"
#include "sirfb/outcome.hpp"

namespace sirfb {

struct TimeStepConfig {
    double dt;
    double t_end;
    int save_stride = 1;          ///< output decimation in steps
    double positivity_tol = 1e-10;
    double dt_safety = 0.5;       ///< Stefan-CFL safety factor
    bool save_profiles = false;

    void validate() const;
};

/// Initial SimState: profiles sampled on the two grids (at t=0 the
/// computational and physical coordinates coincide on [0, h0]).
SimState make_initial_state(const InitialData& init, const GridSpec& grid);

/// One IMEX step: explicit front update from the Stefan condition
/// (I_r = (h0/h) v_s at s = h0), then backward-Euler diffusion with
/// coefficients frozen at the old h, explicit reaction and advection.
/// Values in (-positivity_tol, 0) are clamped to zero; anything below
/// throws SolverError, as do non-finite values and front escape.
SimState step(const SimState& state, const ModelParams& p,
              const GridSpec& grid, const TimeStepConfig& cfg);

/// Iterates step to t_end, recording a Frame every save_stride steps
/// (plus the initial and final states). Errors are captured in the
/// outcome with the failing time. Classification is delegated to analysis.
RunOutcome run(const ModelParams& p, const InitialData& init,
               const GridSpec& grid, const TimeStepConfig& cfg,
               FrameSink* sink = nullptr);

/// Fixed-domain reference mode: all three fields on the physical grid
/// over the ball of radius L with zero-flux boundary, no free boundary.
RunOutcome run_fixed_domain(const ModelParams& p, const InitialData& init,
                            const GridSpec& grid, const TimeStepConfig& cfg,
                            FrameSink* sink = nullptr);

/// Admissible step size: dt_safety * min(front limit ds*h/(h0*|h'|),
/// explicit-reaction limit 1/(beta*sup S + mu2 + alpha)).
double stefan_cfl(const SimState& state, const ModelParams& p,
                  const GridSpec& grid, const TimeStepConfig& cfg);

} // namespace sirfb
