#ifndef FARADAY_OBSERVABLES_HPP
#define FARADAY_OBSERVABLES_HPP

#include <vector>

#include "faraday/analytic.hpp"
#include "faraday/evolution.hpp"
#include "faraday/params.hpp"

namespace faraday {

/// Absorption and dispersion coefficients of one probe component,
///   alpha_i = Im(rho3i Gamma / Omega_i) / l0,
///   beta_i  = Re(rho3i Gamma / Omega_i) / (2 l0),
/// in cm^-1. Throws ZeroProbe when omega_i = 0.
struct AbsorptionDispersion {
    double alpha;
    double beta;
};
AbsorptionDispersion absorption_dispersion(Complex rho3i, Complex omega_i,
                                           const SystemParams& p, const MediumParams& m);

/// Rotation angle of the thin-medium closed form with a validity flag for
/// the thin-medium condition.
struct ThinRotation {
    double phi;          ///< radians, Phi = (Phi_2 - Phi_1) / 2
    bool thin_medium_ok; ///< false when the thin-medium value exceeds 0.1
};

/// Phi(t) = delta L / v_g
///        + (Omega_p^2 / Omega_c^2) sin(delta L / v_g) cos(2 delta t) e^{-gamma_d t}
ThinRotation rotation_angle_thin(const SystemParams& p, const MediumParams& m, double t);

/// Retarded time seen by a slice at depth z.
inline double retarded_time(double t, double z, double v_g) { return t - z / v_g; }

/// Thin-medium transmitted power ratio; identically 1 for constant input.
double transmitted_power_thin(const SystemParams& p, const MediumParams& m, double t);

/// Time series of the probe observables at the cell output.
struct ProbeObservables {
    std::vector<double> times;
    std::vector<double> alpha;        ///< absorption at the input face, cm^-1
    std::vector<double> beta1;        ///< dispersion of component 1, cm^-1
    std::vector<double> beta2;        ///< dispersion of component 2, cm^-1
    std::vector<double> phi;          ///< rotation angle at z = L, rad
    std::vector<double> power_ratio;  ///< Omega_p^2(L) / Omega_p^2(0)
    double eta = 0.0;                 ///< delta L / v_g
};

/// Slice-by-slice integration of the propagation equations
///   d Omega_p^2 / dz = -alpha(t_ret) Omega_p^2,  d Phi_{1,2} / dz = -+ beta_2(t_ret)
/// with t_ret = t - z / v_g, using the analytic coherences per slice
/// (linear interpolation on an internal support grid). Valid for alpha L <= 1;
/// throws RegimeViolation beyond that and InvalidSliceCount for n_slices < 1.
ProbeObservables propagate_z_sliced(const SystemParams& p, const MediumParams& m,
                                    const TimeGrid& grid, int n_slices);

/// Cross-modulation mode (delta1 = 0, delta2 = 2 delta): phase accumulated by
/// beam 1 over the cell, driven purely by the second beam's intensity
/// |Omega_2|^2. Oscillates at 2 delta and damps at gamma_d.
double cross_modulation_phase(const SystemParams& p, const MediumParams& m,
                              double omega2_sq, double t);

/// Damped-cosine description of an oscillating series,
///   y(t) ~ offset + amplitude cos(frequency t + phase) e^{-damping t}.
struct OscillationFit {
    double frequency = 0.0;  ///< angular, >= 0
    double damping = 0.0;
    double amplitude = 0.0;
    double offset = 0.0;
    double phase = 0.0;
    double residual_rms = 0.0;
    bool frequency_identifiable = true;

    /// Fitted-model value at t = 0; the level the oscillation starts from.
    double start_value() const { return offset + amplitude * std::cos(phase); }
};

/// Nonlinear least squares on the damped-cosine model. The frequency is
/// seeded from the discrete spectral peak of the detrended series; when no
/// interior peak exists the series is reported as non-oscillating
/// (amplitude 0, frequency_identifiable = false).
///
/// Throws InsufficientData for fewer than 50 samples or a window shorter
/// than two periods of the seeded frequency, FitDiverged when the converged
/// residual RMS exceeds 20% of the series peak-to-peak.
OscillationFit fit_oscillation(const std::vector<double>& times,
                               const std::vector<double>& values,
                               const OscillationFit& initial_guess = {});

}  // namespace faraday

#endif
