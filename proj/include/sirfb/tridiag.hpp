#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sirfb {

/// Thomas algorithm for a tridiagonal system.
/// sub[i] multiplies x[i-1] (sub[0] unused), diag[i] multiplies x[i],
/// sup[i] multiplies x[i+1] (sup[n-1] unused). Overwrites rhs with the solution.
inline void solve_tridiag(std::span<const double> sub, std::span<double> diag,
                          std::span<const double> sup, std::span<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double w = sub[i] / diag[i - 1];
        diag[i] -= w * sup[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
    }
}

} // namespace sirfb
