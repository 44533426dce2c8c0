#include "sirfb/frontfix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sirfb/errors.hpp"

namespace sirfb {

std::string GridSpec::validate() const {
    if (!(L > 0)) throw ConfigError("GridSpec.L: must be positive");
    if (!(h0 > 0)) throw ConfigError("GridSpec.h0: must be positive");
    if (h0 >= L) throw ConfigError("GridSpec.h0: initial radius must lie inside [0, L)");
    if (N_L < 16) throw ConfigError("GridSpec.N_L: at least 16 intervals required");
    if (N_h < 16) throw ConfigError("GridSpec.N_h: at least 16 intervals required");
    if (n < 1 || n > 3) throw ConfigError("GridSpec.n: supported dimensions are 1, 2 and 3");
    if (L <= 4.0 * h0) {
        std::ostringstream os;
        os << "GridSpec.L: L = " << L << " <= 4*h0 = " << 4.0 * h0
           << "; truncation may be exhausted early";
        return os.str();
    }
    return {};
}

std::vector<double> radial_laplacian(std::span<const double> field,
                                     double spacing, int n) {
    const std::size_t N = field.size() - 1;
    std::vector<double> lap(N + 1, 0.0);
    const double inv2 = 1.0 / (spacing * spacing);
    // Axis: lim Delta w = n * w''(0) with a symmetric ghost node.
    lap[0] = 2.0 * n * (field[1] - field[0]) * inv2;
    for (std::size_t j = 1; j < N; ++j) {
        const double r = j * spacing;
        const double second = (field[j + 1] - 2.0 * field[j] + field[j - 1]) * inv2;
        const double first = (field[j + 1] - field[j - 1]) / (2.0 * spacing);
        lap[j] = second + (n - 1) / r * first;
    }
    return lap;
}

std::vector<double> transformed_operator(std::span<const double> v_comp,
                                         double h, double h_dot, double d,
                                         const GridSpec& grid) {
    const std::size_t N = v_comp.size() - 1;
    const double ds = grid.ds();
    const double diff = d * grid.h0 * grid.h0 / (h * h);
    const double adv = h_dot / h;
    const auto lap = radial_laplacian(v_comp, ds, grid.n);

    std::vector<double> out(N + 1, 0.0);
    out[0] = diff * lap[0]; // advection vanishes at s = 0
    for (std::size_t j = 1; j < N; ++j) {
        const double s = j * ds;
        // h' > 0 transports toward s = 0: information enters from the right.
        const double vs = h_dot >= 0 ? (v_comp[j + 1] - v_comp[j]) / ds
                                     : (v_comp[j] - v_comp[j - 1]) / ds;
        out[j] = diff * lap[j] + adv * s * vs;
    }
    return out;
}

double front_gradient(std::span<const double> v_comp, double ds) {
    const std::size_t N = v_comp.size() - 1;
    return (v_comp[N - 2] - 4.0 * v_comp[N - 1] + 3.0 * v_comp[N]) / (2.0 * ds);
}

namespace {

// Linear interpolation on a uniform grid [0, n*spacing].
double lerp_uniform(std::span<const double> vals, double spacing, double x) {
    const std::size_t N = vals.size() - 1;
    if (x <= 0) return vals[0];
    const double pos = x / spacing;
    const auto j = static_cast<std::size_t>(pos);
    if (j >= N) return vals[N];
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * vals[j] + w * vals[j + 1];
}

} // namespace

CrossFields cross_interpolate(const SimState& state, const GridSpec& grid) {
    if (state.h >= 0.95 * grid.L) {
        throw SolverError("front escaped the truncation domain (h >= 0.95 L)", state.t);
    }
    CrossFields cf;
    const std::size_t NL = state.S_phys.size() - 1;
    const std::size_t Nh = state.v_comp.size() - 1;
    const double dr = grid.dr(), ds = grid.ds();

    cf.S_comp.resize(Nh + 1);
    for (std::size_t j = 0; j <= Nh; ++j) {
        const double r = map_to_physical(j * ds, state.h, grid.h0);
        cf.S_comp[j] = lerp_uniform(state.S_phys, dr, r);
    }
    cf.I_phys.assign(NL + 1, 0.0);
    for (std::size_t i = 0; i <= NL; ++i) {
        const double r = i * dr;
        if (r >= state.h) break; // extension by zero beyond the front
        cf.I_phys[i] = lerp_uniform(state.v_comp, ds, grid.h0 * r / state.h);
    }
    return cf;
}

} // namespace sirfb
