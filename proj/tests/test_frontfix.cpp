#include <doctest.h>

#include <cmath>
#include <vector>

#include "sirfb/errors.hpp"
#include "sirfb/frontfix.hpp"

using namespace sirfb;

namespace {

GridSpec grid(double L = 10.0, int N_L = 100, int N_h = 50, int n = 1,
              double h0 = 1.0) {
    return {L, N_L, N_h, n, h0};
}

std::vector<double> sample(int N, double spacing, double (*f)(double)) {
    std::vector<double> v(N + 1);
    for (int j = 0; j <= N; ++j) v[j] = f(j * spacing);
    return v;
}

} // namespace

TEST_CASE("grid validation: hard errors and the truncation warning") {
    CHECK(grid().validate().empty());
    CHECK(grid(3.5).validate().find("truncation") != std::string::npos);
    CHECK_THROWS_AS(grid(10, 8).validate(), ConfigError);
    CHECK_THROWS_AS(grid(10, 100, 8).validate(), ConfigError);
    CHECK_THROWS_AS(grid(10, 100, 50, 5).validate(), ConfigError);
    CHECK_THROWS_AS(grid(10, 100, 50, 1, -1.0).validate(), ConfigError);
    CHECK_THROWS_AS(grid(10, 100, 50, 1, 12.0).validate(), ConfigError);
}

TEST_CASE("radial Laplacian is exact on quadratics") {
    const int N = 64;
    const double dx = 0.03;
    // f = r^2: Lap f = 2 + 2(n-1) = 2n in dimension n, at the axis and inside.
    const auto f = sample(N, dx, [](double r) { return r * r; });
    for (int n = 1; n <= 3; ++n) {
        const auto lap = radial_laplacian(f, dx, n);
        for (int j = 0; j < N; ++j) {
            CHECK(lap[j] == doctest::Approx(2.0 * n).epsilon(1e-10));
        }
        CHECK(lap[N] == 0.0); // boundary entry is the caller's responsibility
    }
    // constants are annihilated
    const auto c = sample(N, dx, [](double) { return 3.25; });
    for (const double v : radial_laplacian(c, dx, 2)) CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("radial Laplacian converges at second order on a smooth profile") {
    // f = cos(r), n = 1: Lap f = -cos(r).
    const auto err = [](int N) {
        const double dx = 1.0 / N;
        std::vector<double> f(N + 1);
        for (int j = 0; j <= N; ++j) f[j] = std::cos(j * dx);
        const auto lap = radial_laplacian(f, dx, 1);
        double e = 0.0;
        for (int j = 1; j < N; ++j) e = std::max(e, std::abs(lap[j] + std::cos(j * dx)));
        return e;
    };
    const double ratio = err(64) / err(128);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("transformed operator reduces to the Laplacian for a static front") {
    const GridSpec g = grid(10, 100, 64, 2, 1.0);
    std::vector<double> v(g.N_h + 1);
    for (int j = 0; j <= g.N_h; ++j) {
        const double s = j * g.ds();
        v[j] = 1.0 - s * s;
    }
    // h = h0, h' = 0: the operator is d * Lap_s exactly.
    const auto out = transformed_operator(v, g.h0, 0.0, 0.7, g);
    const auto lap = radial_laplacian(v, g.ds(), g.n);
    for (int j = 0; j < g.N_h; ++j) {
        CHECK(out[j] == doctest::Approx(0.7 * lap[j]).epsilon(1e-12));
    }
}

TEST_CASE("transformed operator: diffusion scaling and upwind advection") {
    const GridSpec g = grid(10, 100, 64, 1, 1.0);
    std::vector<double> v(g.N_h + 1);
    for (int j = 0; j <= g.N_h; ++j) {
        const double s = j * g.ds();
        v[j] = 1.0 - s * s; // centered Laplacian of a quadratic is exact (-2)
    }
    const double h = 2.0, hdot = 0.5, d = 1.0;
    const auto out = transformed_operator(v, h, hdot, d, g);
    const double ds = g.ds();
    for (int j = 1; j < g.N_h; ++j) {
        const double s = j * ds;
        const double fwd = (v[j + 1] - v[j]) / ds; // h' > 0: forward difference
        const double expect = d * (g.h0 * g.h0 / (h * h)) * (-2.0) + (hdot / h) * s * fwd;
        CHECK(out[j] == doctest::Approx(expect).epsilon(1e-12));
    }
    // receding front switches the stencil side
    const auto back = transformed_operator(v, h, -0.5, d, g);
    const double s1 = ds;
    const double bwd = (v[1] - v[0]) / ds;
    CHECK(back[1] ==
          doctest::Approx(d * (g.h0 * g.h0 / (h * h)) * (-2.0) + (-0.5 / h) * s1 * bwd));
}

TEST_CASE("front gradient is exact on quadratics") {
    const int N = 20;
    const double ds = 0.05;
    const auto v = sample(N, ds, [](double s) { return s * (2.0 - s); });
    // d/ds [s(2-s)] at s = 1 is 0; at a general endpoint 2 - 2s.
    CHECK(front_gradient(v, ds) == doctest::Approx(2.0 - 2.0 * N * ds).epsilon(1e-10));
    const auto lin = sample(N, ds, [](double s) { return 3.0 * s; });
    CHECK(front_gradient(lin, ds) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("cross interpolation maps between the two grids") {
    const GridSpec g = grid(10.0, 200, 100, 1, 1.0);
    SimState st;
    st.t = 0.0;
    st.h = 2.0;
    st.S_phys.resize(g.N_L + 1);
    for (int i = 0; i <= g.N_L; ++i) st.S_phys[i] = 5.0 + i * g.dr(); // linear in r
    st.v_comp.resize(g.N_h + 1);
    for (int j = 0; j <= g.N_h; ++j) {
        const double s = j * g.ds();
        st.v_comp[j] = 1.0 - s; // linear, zero at s = h0
    }
    st.w_comp = st.v_comp;

    const CrossFields cf = cross_interpolate(st, g);
    REQUIRE(cf.S_comp.size() == st.v_comp.size());
    REQUIRE(cf.I_phys.size() == st.S_phys.size());
    for (int j = 0; j <= g.N_h; ++j) {
        const double r = map_to_physical(j * g.ds(), st.h, g.h0);
        CHECK(cf.S_comp[j] == doctest::Approx(5.0 + r).epsilon(1e-12));
    }
    for (int i = 0; i <= g.N_L; ++i) {
        const double r = i * g.dr();
        const double expect = r < st.h ? 1.0 - g.h0 * r / st.h : 0.0;
        CHECK(cf.I_phys[i] == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("cross interpolation respects field bounds") {
    const GridSpec g = grid(8.0, 160, 64, 3, 0.5);
    SimState st;
    st.h = 1.3;
    st.S_phys.resize(g.N_L + 1);
    st.v_comp.resize(g.N_h + 1);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= g.N_L; ++i) {
        st.S_phys[i] = 2.0 + std::sin(0.37 * i);
        lo = std::min(lo, st.S_phys[i]);
        hi = std::max(hi, st.S_phys[i]);
    }
    for (int j = 0; j <= g.N_h; ++j) {
        const double s = j * g.ds();
        st.v_comp[j] = (g.h0 - s) * (g.h0 + 0.3 * s);
    }
    st.w_comp = st.v_comp;
    const CrossFields cf = cross_interpolate(st, g);
    for (const double v : cf.S_comp) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= hi + 1e-12);
    }
    const double vmax = *std::max_element(st.v_comp.begin(), st.v_comp.end());
    for (const double v : cf.I_phys) {
        CHECK(v >= 0.0);
        CHECK(v <= vmax + 1e-12);
    }
}

TEST_CASE("cross interpolation detects front escape") {
    const GridSpec g = grid(10.0, 100, 50, 1, 1.0);
    SimState st;
    st.t = 7.0;
    st.h = 9.6; // >= 0.95 * L
    st.S_phys.assign(g.N_L + 1, 1.0);
    st.v_comp.assign(g.N_h + 1, 0.0);
    st.w_comp.assign(g.N_h + 1, 0.0);
    CHECK_THROWS_AS(cross_interpolate(st, g), SolverError);
    try {
        cross_interpolate(st, g);
    } catch (const SolverError& e) {
        CHECK(e.time == doctest::Approx(7.0));
    }
}
