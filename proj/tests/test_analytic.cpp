#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "faraday/analytic.hpp"
#include "faraday/evolution.hpp"

using namespace faraday;

namespace {

SystemParams fig2_params(double delta) {
    return SystemParams::symmetric(1.0, 0.3, 1e-4, delta);
}

}  // namespace

TEST_CASE("damping rate limits and hand values") {
    CHECK(damping_rate(fig2_params(0.0)) == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(damping_rate(fig2_params(0.1)) == doctest::Approx(1.9e-3).epsilon(1e-12));
    CHECK(damping_rate(fig2_params(0.03)) == doctest::Approx(2.62e-4).epsilon(1e-12));
    CHECK_THROWS_AS(damping_rate(SystemParams::symmetric(0.0, 0.3, 1e-4, 0.03)),
                    ZeroCoupling);
}

TEST_CASE("damping rate is even in delta and grows with |delta| and Omega_p") {
    for (double d : {0.01, 0.05, 0.09}) {
        CHECK(damping_rate(fig2_params(d)) == damping_rate(fig2_params(-d)));
        CHECK(damping_rate(fig2_params(d + 0.01)) > damping_rate(fig2_params(d)));
    }
    CHECK(damping_rate(SystemParams::symmetric(1.0, 0.4, 1e-4, 0.05)) >
          damping_rate(SystemParams::symmetric(1.0, 0.3, 1e-4, 0.05)));
}

TEST_CASE("rho21 at zero field starts at -Omega_p^2/Omega_c^2") {
    const Complex v = rho21_analytic(fig2_params(0.0), 0.0);
    CHECK(v.real() == doctest::Approx(-0.09).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("rho21 long-time average is half the zero-field start") {
    const SystemParams p = fig2_params(0.05);
    const double t_late = 50.0 / damping_rate(p);
    const Complex v = rho21_analytic(p, t_late);
    CHECK(v.real() == doctest::Approx(-0.045).epsilon(1e-9));
    CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("rho21 quarter-period phase") {
    // t = pi / (2 * 2 delta): beat factor e^{-i pi/2}, braces real part 1
    const SystemParams p = fig2_params(0.03);
    const double t = M_PI / (2.0 * 2.0 * 0.03);
    CHECK(t == doctest::Approx(26.18).epsilon(1e-3));
    const Complex v = rho21_analytic(p, t);
    CHECK(v.real() == doctest::Approx(-0.045).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.045 * std::exp(-damping_rate(p) * t)).epsilon(1e-12));
}

TEST_CASE("rho21 beat factor has frequency exactly 2 delta") {
    const SystemParams p = fig2_params(0.03);
    const double gd = damping_rate(p);
    const double t0 = 40.0, dt = 1.7;
    const Complex c0 = rho21_analytic(p, t0) - rho21_analytic(p, 1e12);
    const Complex c1 = rho21_analytic(p, t0 + dt) - rho21_analytic(p, 1e12);
    const Complex ratio = c1 / c0;
    CHECK(std::abs(ratio) == doctest::Approx(std::exp(-gd * dt)).epsilon(1e-12));
    CHECK(std::arg(ratio) == doctest::Approx(-2.0 * 0.03 * dt).epsilon(1e-12));
}

TEST_CASE("rho21 is real and negative at zero field for equal phases") {
    const SystemParams p = fig2_params(0.0);
    for (double t : {0.0, 10.0, 1e3, 1e5}) {
        const Complex v = rho21_analytic(p, t);
        CHECK(std::abs(v.imag()) < 1e-15);
        CHECK(v.real() < 0.0);
    }
}

TEST_CASE("rho3i vanishes at zero detunings") {
    const Complex v = rho3i_analytic(fig2_params(0.0), 3.0, 1);
    CHECK(std::abs(v) == 0.0);
}

TEST_CASE("rho31 hand-evaluated Fig. 2 value at unit beat factor") {
    const SystemParams p = fig2_params(0.03);
    const Complex v = rho3i_analytic(p, 0.0, 1);
    CHECK(v.real() == doctest::Approx(-0.004905).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(0.000135).epsilon(1e-12));
}

TEST_CASE("rho32 equals rho31 under delta -> -delta with swapped components") {
    const SystemParams p = fig2_params(0.03);
    SystemParams q = SystemParams::symmetric(1.0, 0.3, 1e-4, -0.03);
    for (double t : {0.0, 7.7, 31.4}) {
        const Complex a = rho3i_analytic(p, t, 2);
        const Complex b = rho3i_analytic(q, t, 1);
        CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-12));
        CHECK(a.imag() == doctest::Approx(b.imag()).epsilon(1e-12));
    }
}

TEST_CASE("general shift pair supports the cross-modulation case") {
    const SystemParams p = fig2_params(0.03);
    // delta1 = 0 removes the single-beam term entirely
    const Complex v = rho3i_analytic_general(p, 0.0, 1, 0.0, 2.0 * 0.03);
    CHECK(v.real() == doctest::Approx(-0.3 * 0.09 * 0.06 / 2.0).epsilon(1e-12));
    CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("analytic coherences against the master equation, weak probe") {
    // leading-order formulas; deviations are O(Omega_p^2/Omega_c^2, delta/Omega_c),
    // so the window stays short to keep the accumulated beat-phase slip small
    struct Point {
        double omega_p, delta;
    };
    for (const Point pt : {Point{0.05, 0.03}, Point{0.03, 0.03}, Point{0.1, 0.01}}) {
        const SystemParams p = SystemParams::symmetric(1.0, pt.omega_p, 1e-4, pt.delta);
        const Superoperator op = build_liouvillian(p);
        const TimeGrid grid{0.0, 80.0, 801};
        const StateTrajectory traj =
            evolve(DensityMatrix::equal_zeeman_mixture(), op, grid);

        double num = 0.0, den = 0.0;
        for (int k = 0; k < grid.sample_count; ++k) {
            const double t = grid.time(k);
            if (t < 30.0) continue;
            const Complex sim = traj.states[k].rho21();
            const Complex ana = rho21_analytic(p, t);
            num += std::norm(ana - sim);
            den += std::norm(sim);
        }
        CAPTURE(pt.omega_p);
        CAPTURE(pt.delta);
        CHECK(std::sqrt(num / den) <= 0.05);
    }
}

TEST_CASE("group velocity substitution and the Rb D2 chain") {
    const MediumParams rb = MediumParams::from_cross_section(1e10, 3.0, 2.9e-9);

    SystemParams unit = fig2_params(0.0);
    CHECK(group_velocity(unit, rb) ==
          doctest::Approx(4.0 * rb.absorption_length()).epsilon(1e-12));

    SystemParams si;
    si.gamma = 2.0 / 3.0 * 2.0 * M_PI * 9e6;
    si.omega_c = si.Gamma();
    CHECK(rb.absorption_length() == doctest::Approx(0.0345).epsilon(2e-3));
    CHECK(group_velocity(si, rb) == doctest::Approx(7.8e6).epsilon(1e-3));

    const MediumParams doubled = MediumParams::from_cross_section(2e10, 3.0, 2.9e-9);
    CHECK(group_velocity(si, doubled) ==
          doctest::Approx(0.5 * group_velocity(si, rb)).epsilon(1e-12));

    CHECK_THROWS_AS(group_velocity(SystemParams::symmetric(0.0, 0.3, 1e-4, 0.0), rb),
                    ZeroCoupling);
}

TEST_CASE("regime report passes trivially without Doppler and ground decoherence") {
    SystemParams p = SystemParams::symmetric(0.5, 0.05, 0.0, 0.01);
    const RegimeReport r = check_regime_eit_only(p);
    CHECK(r.eit_1_pass);
    CHECK(r.eit_2_pass);
    CHECK(std::isinf(r.margin_1));
}

TEST_CASE("regime report flags a gross EIT violation") {
    SystemParams p = SystemParams::symmetric(0.01, 0.001, 1e-4, 0.1);
    p.doppler_width = 100.0;
    const RegimeReport r = check_regime_eit_only(p);
    CHECK_FALSE(r.eit_1_pass);
}

TEST_CASE("Rb D2 thin-medium value") {
    const ZeemanShifts shifts = zeeman_shifts(ZeemanParams{0.5, 0.5, 0, 0.7});
    SystemParams p;
    p.gamma = 2.0 / 3.0 * 2.0 * M_PI * 9e6;
    p.gamma0 = 1e-4 * p.Gamma();
    p.omega_c = p.Gamma();
    p.omega_p = std::sqrt(0.1) * p.omega_c;
    p.delta = shifts.delta;
    p.delta_1 = +p.delta;
    p.delta_2 = -p.delta;
    const MediumParams rb = MediumParams::from_cross_section(1e10, 3.0, 2.9e-9);
    const RegimeReport r = check_regime(p, rb);
    CHECK(r.has_medium);
    CHECK(r.thin_medium_value == doctest::Approx(0.13).epsilon(0.02));
    // 0.129 sits just above the 0.1 operational threshold
    CHECK_FALSE(r.thin_medium_pass);
    CHECK(r.eit_1_pass);
    CHECK(r.eit_2_pass);
}

TEST_CASE("degenerate coupling yields failed flags, not errors") {
    SystemParams p;
    p.gamma = 1.0;
    p.omega_c = 0.0;
    const MediumParams m = MediumParams::from_cross_section(1e10, 1.0, 1e-9);
    const RegimeReport r = check_regime(p, m);
    CHECK_FALSE(r.eit_1_pass);
    CHECK_FALSE(r.eit_2_pass);
    CHECK_FALSE(r.thin_medium_pass);
}

TEST_CASE("paper start-value expression") {
    CHECK(beat_start_value(fig2_params(0.03)) ==
          doctest::Approx(-0.09 / 1.18).epsilon(1e-12));
}
