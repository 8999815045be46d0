#ifndef FARADAY_ANALYTIC_HPP
#define FARADAY_ANALYTIC_HPP

#include "faraday/params.hpp"
#include "faraday/types.hpp"

namespace faraday {

/// Closed-form EIT coherences at one instant (leading order in
/// Omega_p/Omega_c and delta/Omega_c, transient O(e^{-gamma t}) dropped).
struct AnalyticCoherences {
    Complex rho21;
    Complex rho31;
    Complex rho32;
};

/// Damping rate of the Zeeman beat, gamma_d = gamma0 + 2 Gamma Omega_p^2
/// delta^2 / Omega_c^4. Throws ZeroCoupling when Omega_c = 0.
double damping_rate(const SystemParams& p);

/// Zeeman coherence
///   rho21(t) = -(Omega_1 Omega_2^*)/(2 Omega_c^2)
///              x {1 + e^{-gamma_d t} e^{i(delta1 - delta2) t}}
/// with level shifts delta1 = -delta, delta2 = +delta.
Complex rho21_analytic(const SystemParams& p, double t);

/// Optical coherence for arbitrary level shifts (delta1, delta2):
///   rho31 = Omega_1 delta1 (Omega_c^2 + i Gamma delta1) / (2 Omega_c^4)
///         - Omega_1 |Omega_2|^2 delta2 e^{-gamma_d t} e^{i(delta1-delta2)t}
///           / (2 Omega_c^4)
/// The i = 2 component is the 1 <-> 2 index swap.
Complex rho3i_analytic_general(const SystemParams& p, double t, int i, double delta1,
                               double delta2);

/// Symmetric-mode optical coherence, delta1 = -delta, delta2 = +delta.
Complex rho3i_analytic(const SystemParams& p, double t, int i);

/// All three closed-form coherences in symmetric mode.
AnalyticCoherences analytic_coherences(const SystemParams& p, double t);

/// The start value the beats settle to after the fast transient,
/// -|Omega_1 Omega_2| / (Omega_c^2 + 2 Omega_p^2).
double beat_start_value(const SystemParams& p);

/// EIT group velocity v_g = 4 Omega_c^2 l0 / Gamma, shared by both probe
/// polarization components. cm per time unit of the angular frequencies.
double group_velocity(const SystemParams& p, const MediumParams& m);

/// Validity diagnostics for the closed-form regime. A condition passes when
/// the small side is below threshold_ratio times the dominating side.
struct RegimeReport {
    double eit_lhs = 0.0;            ///< Omega_c^2
    double eit_rhs_1 = 0.0;          ///< delta * Delta_D
    double eit_rhs_2 = 0.0;          ///< gamma0 (gamma + Delta_D)
    double thin_medium_value = 0.0;  ///< delta^2 Gamma^2 L / (2 Omega_c^4 l0)
    double margin_1 = 0.0;           ///< eit_lhs / eit_rhs_1 (inf when rhs = 0)
    double margin_2 = 0.0;
    bool eit_1_pass = false;
    bool eit_2_pass = false;
    bool thin_medium_pass = false;
    bool has_medium = false;

    bool eit_pass() const { return eit_1_pass && eit_2_pass; }
    bool all_pass() const { return eit_pass() && (!has_medium || thin_medium_pass); }
};

inline constexpr double kRegimeThreshold = 0.1;

RegimeReport check_regime(const SystemParams& p, const MediumParams& m);

/// EIT conditions only, for runs without a configured medium.
RegimeReport check_regime_eit_only(const SystemParams& p);

}  // namespace faraday

#endif
