#include <doctest.h>

#include <cmath>
#include <vector>

#include "sirfb/analysis.hpp"
#include "sirfb/errors.hpp"

using namespace sirfb;

namespace {

ModelParams base_params() {
    ModelParams p;
    p.b = 1.0;
    p.beta = 1.0;
    p.mu1 = 0.5;
    p.mu2 = 0.6;
    p.mu3 = 0.7;
    p.alpha = 0.4;
    p.d1 = p.d2 = p.d3 = 1.0;
    p.mu = 0.28125;
    p.n = 1;
    return p;
}

std::vector<Frame> synthetic_series(double h0, double h_end, double sup_i_end,
                                    int frames = 101, double t_end = 100.0) {
    std::vector<Frame> s(frames);
    for (int k = 0; k < frames; ++k) {
        const double x = static_cast<double>(k) / (frames - 1);
        Frame& f = s[k];
        f.t = t_end * x;
        f.h = h0 + (h_end - h0) * x;
        f.sup_I = 0.3 + (sup_i_end - 0.3) * x;
        f.dhdt = 0;
        f.sup_S = 2;
        f.sup_R = 0;
        f.mass_I = 0;
        f.balance_residual = 0;
    }
    return s;
}

ThresholdReport report_with_star(double h0_star) {
    ThresholdReport th{};
    th.h0_star = h0_star;
    return th;
}

// Quadratic bump profile in computational coordinates, front at h.
ProfileFrame bump_profile(double t, double h, double amp, const GridSpec& g) {
    ProfileFrame f;
    f.t = t;
    f.h = h;
    f.S_phys.assign(g.N_L + 1, 2.0);
    f.v_comp.resize(g.N_h + 1);
    for (int j = 0; j <= g.N_h; ++j) {
        const double y = static_cast<double>(j) / g.N_h;
        f.v_comp[j] = amp * (1.0 - y * y);
    }
    f.w_comp = f.v_comp;
    return f;
}

} // namespace

TEST_CASE("classification of synthetic outcomes") {
    const ModelParams p = base_params();
    const ThresholdReport th = report_with_star(1.5);

    // dead infection, stagnant front
    auto dead = synthetic_series(1.0, 1.0, 0.3);
    for (auto& f : dead) f.sup_I = 1e-12;
    CHECK(classify(dead, p, th) == Classification::VANISHING);

    // far-advanced front with the infection alive throughout
    const auto alive = synthetic_series(1.0, 8.0, 0.2);
    CHECK(classify(alive, p, th) == Classification::SPREADING);

    // advanced front but the infection dies in the trailing window
    auto fading = synthetic_series(1.0, 8.0, 0.2);
    for (auto& f : fading) {
        if (f.t > 85.0) f.sup_I = 1e-9;
    }
    CHECK(classify(fading, p, th) == Classification::UNDECIDED);

    // front not past max(4 h0, 2 h0_star) yet
    CHECK(classify(synthetic_series(1.0, 2.9, 0.2), p, th) ==
          Classification::UNDECIDED);

    // small sup I but still-moving front
    auto moving = synthetic_series(1.0, 1.3, 0.3);
    for (auto& f : moving) f.sup_I = 1e-12;
    CHECK(classify(moving, p, th) == Classification::UNDECIDED);

    CHECK_THROWS_AS(classify({}, p, th), ConfigError);
    CHECK(std::string(to_string(Classification::SPREADING)) == "SPREADING");
    CHECK(std::string(to_string(Classification::VANISHING)) == "VANISHING");
    CHECK(std::string(to_string(Classification::UNDECIDED)) == "UNDECIDED");
}

TEST_CASE("the spreading threshold respects the critical radius") {
    const ModelParams p = base_params();
    const auto series = synthetic_series(1.0, 8.0, 0.2);
    CHECK(classify(series, p, report_with_star(1.5)) == Classification::SPREADING);
    // 2 h0_star = 12 exceeds h_end = 8: not decisive yet
    CHECK(classify(series, p, report_with_star(6.0)) == Classification::UNDECIDED);
}

TEST_CASE("weighted infected mass matches closed forms") {
    const double amp = 0.7, h = 1.8;
    for (int n = 1; n <= 3; ++n) {
        ModelParams p = base_params();
        p.n = n;
        const GridSpec g{10.0, 100, 400, n, 1.2};
        const ProfileFrame f = bump_profile(0.0, h, amp, g);
        // int_0^h r^{n-1} A (1-(r/h)^2) dr
        const double exact = n == 1   ? 2.0 * amp * h / 3.0
                             : n == 2 ? amp * h * h / 4.0
                                      : 2.0 * amp * h * h * h / 15.0;
        CHECK(weighted_mass(f, p, g) == doctest::Approx(exact).epsilon(1e-4));
    }
}

TEST_CASE("integral identity right-hand side matches the closed form") {
    const double amp = 0.7, h = 1.8;
    const ModelParams p = base_params();
    const GridSpec g{10.0, 100, 400, 1, 1.2};
    const ProfileFrame f = bump_profile(0.0, h, amp, g);
    // quadratic bump: one-sided gradient at the front is exact (-2 amp / h0),
    // so h' = mu*(h0/h)*(2 amp/h0) = 2 mu amp / h; S is constant 2.
    const double dhdt = 2.0 * p.mu * amp / h;
    const double mass = 2.0 * amp * h / 3.0;
    const double exact = -(p.d2 / p.mu) * dhdt + (p.beta * 2.0 - p.mu2 - p.alpha) * mass;
    CHECK(identity_rhs(f, p, g) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("balance residual requires ordered frames and refines with the grid") {
    const ModelParams p = base_params();
    const GridSpec g{10.0, 100, 200, 1, 1.2};
    const ProfileFrame a = bump_profile(0.0, 1.8, 0.7, g);
    const ProfileFrame b = bump_profile(0.1, 1.9, 0.6, g);
    CHECK_THROWS_AS(mass_balance_residual(b, a, p, g), ConfigError);
    CHECK(mass_balance_residual(a, b, p, g) >= 0.0);

    // the residual reported by an actual run shrinks when ds and dt halve
    const InitialData init = make_bump_initial_data(1.0, 2.0, 0.3);
    const auto residual_at = [&](int N_h, double dt) {
        const GridSpec grid{10.0, 400, N_h, 1, 1.0};
        TimeStepConfig cfg{dt, 1.0, static_cast<int>(std::lround(1.0 / dt)),
                           1e-10, 0.5, false};
        const RunOutcome out = run(base_params(), init, grid, cfg);
        REQUIRE(out.ok);
        return out.series.back().balance_residual;
    };
    const double coarse = residual_at(64, 2e-3);
    const double fine = residual_at(128, 1e-3);
    CHECK(fine < coarse);
    CHECK(coarse / fine > 1.5);
}

TEST_CASE("comparison against the certified upper solution") {
    const ModelParams p = base_params();
    const InitialData init = make_bump_initial_data(0.225, 2.0, 0.3, 0.0);
    const GridSpec g{1.5, 60, 64, 1, 0.225};
    TimeStepConfig cfg{1e-3, 20.0, 500, 1e-10, 0.5, true};
    const RunOutcome out = run(p, init, g, cfg);
    REQUIRE(out.ok);
    const Supersolution sup = build_supersolution(p, init, out.thresholds);
    REQUIRE(sup.hypotheses_ok);

    const ComparisonReport rep = comparison_check(out, sup, 1e-3 * sup.big_m);
    CHECK(rep.preconditions_ok);
    CHECK(rep.pass);

    // refusal when the hypotheses fail
    ModelParams loose = p;
    loose.mu = 10.0;
    const Supersolution bad = build_supersolution(loose, init, thresholds(loose, init));
    const ComparisonReport r2 = comparison_check(out, bad, 1e-3);
    CHECK_FALSE(r2.preconditions_ok);
    CHECK_FALSE(r2.pass);

    // refusal without saved profiles
    RunOutcome empty;
    const ComparisonReport r3 = comparison_check(empty, sup, 1e-3);
    CHECK_FALSE(r3.preconditions_ok);

    // detection of an actual violation: compare against a shrunken bound
    Supersolution tight = sup;
    tight.big_m = 1e-6;
    const ComparisonReport r4 = comparison_check(out, tight, 1e-9);
    CHECK(r4.preconditions_ok);
    CHECK_FALSE(r4.pass);
    CHECK(r4.max_i_excess > 0.0);
}

TEST_CASE("bisection narrows a synthetic threshold") {
    const double crit = 0.6180339887;
    const auto oracle = [crit](double h0) {
        return h0 < crit ? Classification::VANISHING : Classification::SPREADING;
    };
    const SweepResult res = sweep_critical_h0(oracle, 0.1, 1.7, 10, 1.0);
    CHECK(res.lo < crit);
    CHECK(res.hi > crit);
    CHECK(res.hi - res.lo == doctest::Approx((1.7 - 0.1) / 1024.0));
    CHECK(res.evaluations.size() == 12);
    CHECK(res.h0_star == doctest::Approx(1.0));

    // reversed orientation: spreading at the low end
    const auto flipped = [crit](double h0) {
        return h0 > crit ? Classification::VANISHING : Classification::SPREADING;
    };
    const SweepResult rev = sweep_critical_h0(flipped, 0.1, 1.7, 10, 1.0);
    CHECK(rev.lo < crit);
    CHECK(rev.hi > crit);

    // zero iterations: endpoint validation only
    const SweepResult raw = sweep_critical_h0(oracle, 0.1, 1.7, 0, 1.0);
    CHECK(raw.lo == doctest::Approx(0.1));
    CHECK(raw.hi == doctest::Approx(1.7));
}

TEST_CASE("bisection rejects invalid brackets") {
    const auto all_vanish = [](double) { return Classification::VANISHING; };
    CHECK_THROWS_AS(sweep_critical_h0(all_vanish, 0.1, 1.0, 4, 1.0), BracketError);
    const auto undecided = [](double) { return Classification::UNDECIDED; };
    CHECK_THROWS_AS(sweep_critical_h0(undecided, 0.1, 1.0, 4, 1.0), BracketError);
    const auto oracle = [](double h0) {
        return h0 < 0.5 ? Classification::VANISHING : Classification::SPREADING;
    };
    CHECK_THROWS_AS(sweep_critical_h0(oracle, -0.1, 1.0, 4, 1.0), BracketError);
    CHECK_THROWS_AS(sweep_critical_h0(oracle, 1.0, 0.1, 4, 1.0), BracketError);
    CHECK_THROWS_AS(sweep_critical_h0(oracle, 0.1, 1.0, -2, 1.0), BracketError);
}
