#pragma once

#include <span>
#include <string>
#include <vector>

namespace sirfb {

/// Two uniform grids: the fixed physical grid for S on [0, L] and the
/// computational grid for I, R on [0, h0] (front-fixed coordinates
/// s = h0 r / h(t)).
struct GridSpec {
    double L;   ///< truncation radius of the S-domain
    int N_L;    ///< physical-grid intervals
    int N_h;    ///< computational-grid intervals
    int n;      ///< spatial dimension
    double h0;  ///< initial infected radius (sets ds = h0/N_h)

    double dr() const { return L / N_L; }
    double ds() const { return h0 / N_h; }

    /// Throws ConfigError on hard violations; returns a warning string
    /// (empty if none) for soft ones such as L <= 4 h0.
    std::string validate() const;
};

/// Current time, front position and field values on the two grids.
/// S lives at physical nodes r_i = i*dr; v = I and w = R live at
/// computational nodes s_j = j*ds with Dirichlet zero at s = h0.
struct SimState {
    double t = 0;
    double h;
    std::vector<double> S_phys;
    std::vector<double> v_comp;
    std::vector<double> w_comp;
};

/// r = s*h/h0.
inline double map_to_physical(double s, double h, double h0) {
    return s * h / h0;
}

/// Radial Laplacian w_rr + (n-1)/r w_r on a uniform grid, centered
/// second-order stencil. At the axis the limit n*w''(0) is used with a
/// symmetric ghost node. The last entry is left zero (boundary condition
/// is the caller's).
std::vector<double> radial_laplacian(std::span<const double> field,
                                     double spacing, int n);

/// Spatial part of the front-fixed I/R equation:
/// d*(h0^2/h^2)*Lap_s v + (h'/h)*s*v_s, reaction excluded.
/// The advection term is first-order upwind (h' > 0 transports toward s=0,
/// so the forward difference is used). Returns values at nodes 0..N-1;
/// entry N is zero (Dirichlet).
std::vector<double> transformed_operator(std::span<const double> v_comp,
                                         double h, double h_dot, double d,
                                         const GridSpec& grid);

/// One-sided second-order derivative at s = h0:
/// (v_{N-2} - 4 v_{N-1} + 3 v_N)/(2 ds).
double front_gradient(std::span<const double> v_comp, double ds);

struct CrossFields {
    std::vector<double> S_comp; ///< S at the mapped computational nodes
    std::vector<double> I_phys; ///< I at physical nodes (zero for r >= h)
};

/// Linear interpolation coupling the two grids. Throws SolverError when
/// h >= 0.95 L (truncation domain exhausted).
CrossFields cross_interpolate(const SimState& state, const GridSpec& grid);

} // namespace sirfb
