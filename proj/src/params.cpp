#include "faraday/params.hpp"

#include <cmath>
#include <stdexcept>

namespace faraday {

void ZeemanParams::validate() const {
    if (m0 < -2 || m0 > 2)
        throw std::invalid_argument("zeeman m0 must lie in [-2, 2]");
    if (!std::isfinite(b_field) || !std::isfinite(g_lande) || !std::isfinite(g0))
        throw std::invalid_argument("zeeman parameters must be finite");
}

ZeemanShifts zeeman_shifts(const ZeemanParams& z) {
    z.validate();
    return {z.g_lande * constants::kMuBOverHbar * z.b_field,
            z.g0 * constants::kMuBOverHbar * z.b_field * static_cast<double>(z.m0)};
}

SystemParams SystemParams::symmetric(double omega_c, double omega_p, double gamma0,
                                     double delta, double gamma) {
    SystemParams p;
    p.gamma = gamma;
    p.gamma0 = gamma0;
    p.omega_c = omega_c;
    p.omega_p = omega_p;
    p.delta = delta;
    p.delta_1 = +delta;
    p.delta_2 = -delta;
    p.delta_c = 0.0;
    p.validate();
    return p;
}

SystemParams SystemParams::in_gamma_units() const {
    const double scale = 1.0 / Gamma();
    SystemParams p = *this;
    p.gamma *= scale;
    p.gamma0 *= scale;
    p.omega_c *= scale;
    p.omega_p *= scale;
    p.delta *= scale;
    p.delta0 *= scale;
    p.delta_c *= scale;
    p.delta_1 *= scale;
    p.delta_2 *= scale;
    p.doppler_width *= scale;
    return p;
}

void SystemParams::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
    if (gamma0 < 0.0) throw std::invalid_argument("gamma0 must be non-negative");
    if (omega_c < 0.0) throw std::invalid_argument("omega_c must be non-negative");
    if (omega_p < 0.0) throw std::invalid_argument("omega_p must be non-negative");
    if (doppler_width < 0.0) throw std::invalid_argument("doppler_width must be non-negative");
}

MediumParams MediumParams::from_cross_section(double number_density, double cell_length,
                                              double sigma) {
    MediumParams m;
    m.number_density = number_density;
    m.cell_length = cell_length;
    m.cross_section = sigma;
    m.validate();
    return m;
}

MediumParams MediumParams::from_dipole(double number_density, double cell_length,
                                       double dipole_moment, double optical_frequency,
                                       double gamma_opt,
                                       std::optional<double> sigma_direct) {
    if (dipole_moment <= 0.0 || optical_frequency <= 0.0 || gamma_opt <= 0.0)
        throw std::invalid_argument("dipole-based cross section needs positive inputs");
    const double sigma = 4.0 * M_PI * optical_frequency * dipole_moment * dipole_moment /
                         (constants::kHbarCgs * constants::kSpeedOfLightCgs * gamma_opt);
    if (sigma_direct) {
        const double rel = std::abs(sigma - *sigma_direct) /
                           std::max(std::abs(sigma), std::abs(*sigma_direct));
        if (rel > 1e-9)
            throw std::invalid_argument(
                "cross_section disagrees with dipole-derived value beyond 1e-9 relative");
    }
    return from_cross_section(number_density, cell_length, sigma);
}

void MediumParams::validate() const {
    if (!(number_density > 0.0)) throw std::invalid_argument("number_density must be positive");
    if (!(cell_length > 0.0)) throw std::invalid_argument("cell_length must be positive");
    if (!(cross_section > 0.0)) throw std::invalid_argument("cross_section must be positive");
}

}  // namespace faraday
