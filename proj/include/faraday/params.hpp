#ifndef FARADAY_PARAMS_HPP
#define FARADAY_PARAMS_HPP

#include <cmath>
#include <optional>

#include "faraday/errors.hpp"
#include "faraday/types.hpp"

namespace faraday {

namespace constants {

/// Bohr magneton over hbar, angular frequency per gauss: 2*pi x 1.3996 MHz/G.
inline constexpr double kMuBOverHbar = 2.0 * M_PI * 1.3996e6;

/// CGS constants used for the cross-section relation sigma = 4 pi w mu^2 / (hbar c Gamma).
inline constexpr double kHbarCgs = 1.054571817e-27;        // erg s
inline constexpr double kSpeedOfLightCgs = 2.99792458e10;  // cm/s

}  // namespace constants

/// Magnetic-field inputs of the Zeeman level shifts.
///   delta  = g  * muB/hbar * B        (shift scale of |1>, |2>, m = -+1)
///   delta0 = g0 * muB/hbar * B * m0   (shift of the auxiliary level |0>)
struct ZeemanParams {
    double g_lande = 0.5;  ///< Lande factor of |1>, |2>
    double g0 = 0.5;       ///< Lande factor of |0>
    int m0 = 0;            ///< magnetic quantum number of |0>, in [-2, 2]
    double b_field = 0.0;  ///< magnetic field, gauss (any sign)

    void validate() const;
};

struct ZeemanShifts {
    double delta;   ///< angular frequency, signed
    double delta0;  ///< angular frequency, signed
};

/// Linear Zeeman shifts for a given field. Total function of valid inputs.
ZeemanShifts zeeman_shifts(const ZeemanParams& z);

/// All coherent and incoherent parameters of the driven four-level atom.
///
/// Angular frequencies share one unit system; the library is unit-covariant,
/// so either Gamma-units (Gamma = 1, time in 1/Gamma) or physical rad/s work
/// as long as every rate uses the same unit. Basis order is (|0>,|1>,|2>,|3>).
struct SystemParams {
    double gamma = 2.0 / 3.0;  ///< spontaneous decay rate per channel |3> -> |i|
    double gamma0 = 0.0;       ///< ground-state coherence decay rate
    double omega_c = 0.0;      ///< coupling Rabi frequency (real, >= 0)
    double omega_p = 0.0;      ///< probe Rabi magnitude (real, >= 0)
    double phi1 = 0.0;         ///< input phase of probe component 1 (rad)
    double phi2 = 0.0;         ///< input phase of probe component 2 (rad)
    double delta = 0.0;        ///< Zeeman shift scale delta (signed)
    double delta0 = 0.0;       ///< Zeeman shift of |0>
    double delta_c = 0.0;      ///< coupling detuning Delta_c
    double delta_1 = 0.0;      ///< probe detuning Delta_1
    double delta_2 = 0.0;      ///< probe detuning Delta_2
    double doppler_width = 0.0;  ///< Doppler width, 0 disables averaging

    /// Optical dephasing linewidth, fixed at 3 gamma / 2.
    double Gamma() const { return 1.5 * gamma; }

    /// Complex probe Rabi frequencies Omega_{1,2} = Omega_p e^{i Phi_{1,2}}.
    Complex omega_1() const { return omega_p * std::polar(1.0, phi1); }
    Complex omega_2() const { return omega_p * std::polar(1.0, phi2); }

    /// Symmetric drive: coupling on resonance (Delta_c = 0) and the probe
    /// tuned so Delta_{1,2} = -delta_{1,2} = +-delta.
    static SystemParams symmetric(double omega_c, double omega_p, double gamma0,
                                  double delta, double gamma = 2.0 / 3.0);

    /// Rescale every angular frequency by 1/Gamma so Gamma = 1. Times computed
    /// against the result are in units of 1/Gamma(original).
    SystemParams in_gamma_units() const;

    void validate() const;
};

/// Vapor-cell properties in cm-based units.
struct MediumParams {
    double number_density = 0.0;  ///< N, cm^-3
    double cell_length = 0.0;     ///< L, cm
    double cross_section = 0.0;   ///< sigma, cm^2

    /// l0 = 1 / (sigma N), cm.
    double absorption_length() const { return 1.0 / (cross_section * number_density); }

    static MediumParams from_cross_section(double number_density, double cell_length,
                                           double sigma);

    /// Derives sigma = 4 pi omega_opt mu^2 / (hbar c Gamma) from the dipole
    /// moment mu (esu cm) and the optical angular frequency (rad/s). When
    /// sigma_direct is also given the two must agree to 1e-9 relative.
    static MediumParams from_dipole(double number_density, double cell_length,
                                    double dipole_moment, double optical_frequency,
                                    double gamma_opt,
                                    std::optional<double> sigma_direct = std::nullopt);

    void validate() const;
};

}  // namespace faraday

#endif
