#include "faraday/analytic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace faraday {

namespace {

Complex beat_phase(double delta1, double delta2, double gamma_d, double t) {
    return std::exp(-gamma_d * t) * std::polar(1.0, (delta1 - delta2) * t);
}

}  // namespace

double damping_rate(const SystemParams& p) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    const double wc2 = p.omega_c * p.omega_c;
    return p.gamma0 +
           2.0 * p.Gamma() * p.omega_p * p.omega_p * p.delta * p.delta / (wc2 * wc2);
}

Complex rho21_analytic(const SystemParams& p, double t) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    const double delta1 = -p.delta;
    const double delta2 = +p.delta;
    const Complex prefactor =
        -p.omega_1() * std::conj(p.omega_2()) / (2.0 * p.omega_c * p.omega_c);
    return prefactor * (1.0 + beat_phase(delta1, delta2, damping_rate(p), t));
}

Complex rho3i_analytic_general(const SystemParams& p, double t, int i, double delta1,
                               double delta2) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    if (i != 1 && i != 2) throw std::invalid_argument("probe component index must be 1 or 2");

    const double wc2 = p.omega_c * p.omega_c;
    const double wc4 = wc2 * wc2;
    const double gd = damping_rate(p);

    // i = 2 is the 1 <-> 2 swap: omega, own shift and partner shift exchanged
    const Complex omega_own = (i == 1) ? p.omega_1() : p.omega_2();
    const Complex omega_other = (i == 1) ? p.omega_2() : p.omega_1();
    const double d_own = (i == 1) ? delta1 : delta2;
    const double d_other = (i == 1) ? delta2 : delta1;

    const Complex first =
        omega_own * d_own * (Complex{wc2, 0.0} + kImag * p.Gamma() * d_own) / (2.0 * wc4);
    const Complex second = -omega_own * std::norm(omega_other) * d_other *
                           beat_phase(d_own, d_other, gd, t) / (2.0 * wc4);
    return first + second;
}

Complex rho3i_analytic(const SystemParams& p, double t, int i) {
    return rho3i_analytic_general(p, t, i, -p.delta, +p.delta);
}

AnalyticCoherences analytic_coherences(const SystemParams& p, double t) {
    return {rho21_analytic(p, t), rho3i_analytic(p, t, 1), rho3i_analytic(p, t, 2)};
}

double beat_start_value(const SystemParams& p) {
    return -std::abs(p.omega_1() * std::conj(p.omega_2())) /
           (p.omega_c * p.omega_c + 2.0 * p.omega_p * p.omega_p);
}

double group_velocity(const SystemParams& p, const MediumParams& m) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    m.validate();
    return 4.0 * p.omega_c * p.omega_c * m.absorption_length() / p.Gamma();
}

namespace {

RegimeReport eit_part(const SystemParams& p) {
    RegimeReport r;
    r.eit_lhs = p.omega_c * p.omega_c;
    r.eit_rhs_1 = std::abs(p.delta) * p.doppler_width;
    r.eit_rhs_2 = p.gamma0 * (p.gamma + p.doppler_width);
    const double inf = std::numeric_limits<double>::infinity();
    r.margin_1 = (r.eit_rhs_1 > 0.0) ? r.eit_lhs / r.eit_rhs_1 : inf;
    r.margin_2 = (r.eit_rhs_2 > 0.0) ? r.eit_lhs / r.eit_rhs_2 : inf;
    r.eit_1_pass = r.eit_rhs_1 < kRegimeThreshold * r.eit_lhs;
    r.eit_2_pass = r.eit_rhs_2 < kRegimeThreshold * r.eit_lhs;
    return r;
}

}  // namespace

RegimeReport check_regime_eit_only(const SystemParams& p) {
    p.validate();
    return eit_part(p);
}

RegimeReport check_regime(const SystemParams& p, const MediumParams& m) {
    p.validate();
    m.validate();
    RegimeReport r = eit_part(p);
    r.has_medium = true;
    const double wc2 = p.omega_c * p.omega_c;
    const double g2 = p.Gamma() * p.Gamma();
    if (wc2 > 0.0) {
        r.thin_medium_value = p.delta * p.delta * g2 * m.cell_length /
                              (2.0 * wc2 * wc2 * m.absorption_length());
        r.thin_medium_pass = r.thin_medium_value < kRegimeThreshold;
    } else {
        r.thin_medium_value = std::numeric_limits<double>::infinity();
        r.thin_medium_pass = false;
    }
    return r;
}

}  // namespace faraday
