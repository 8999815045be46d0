#include "faraday/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace faraday {

AbsorptionDispersion absorption_dispersion(Complex rho3i, Complex omega_i,
                                           const SystemParams& p, const MediumParams& m) {
    if (omega_i == Complex{0.0, 0.0}) throw ZeroProbe();
    m.validate();
    const Complex chi = rho3i * p.Gamma() / omega_i;
    const double l0 = m.absorption_length();
    return {chi.imag() / l0, chi.real() / (2.0 * l0)};
}

namespace {

/// rho3i Gamma / Omega_i for the closed-form coherences; finite for any
/// probe strength since rho3i is proportional to Omega_i.
Complex susceptibility_ratio(const SystemParams& p, double t, double d_own,
                             double d_other, double omega_other_sq, double gamma_d) {
    const double wc2 = p.omega_c * p.omega_c;
    const double wc4 = wc2 * wc2;
    const Complex first = d_own * (Complex{wc2, 0.0} + kImag * p.Gamma() * d_own);
    const Complex second = -omega_other_sq * d_other * std::exp(-gamma_d * t) *
                           std::polar(1.0, (d_own - d_other) * t);
    return p.Gamma() * (first + second) / (2.0 * wc4);
}

}  // namespace

ThinRotation rotation_angle_thin(const SystemParams& p, const MediumParams& m, double t) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    const double eta = p.delta * m.cell_length / group_velocity(p, m);
    const double ratio = p.omega_p * p.omega_p / (p.omega_c * p.omega_c);
    const double phi = eta + ratio * std::sin(eta) * std::cos(2.0 * p.delta * t) *
                                 std::exp(-damping_rate(p) * t);
    return {phi, check_regime(p, m).thin_medium_pass};
}

double transmitted_power_thin(const SystemParams& p, const MediumParams& m, double t) {
    (void)t;
    p.validate();
    m.validate();
    return 1.0;  // Omega_p^2(L, t) = Omega_p^2(0, t - L/v_g) = Omega_p^2(0)
}

ProbeObservables propagate_z_sliced(const SystemParams& p, const MediumParams& m,
                                    const TimeGrid& grid, int n_slices) {
    p.validate();
    m.validate();
    grid.validate();
    if (n_slices < 1) throw InvalidSliceCount("n_slices must be at least 1");
    if (p.omega_c == 0.0) throw ZeroCoupling();

    const RegimeReport regime = check_regime(p, m);
    if (regime.thin_medium_value > 1.0)
        throw RegimeViolation("alpha L exceeds 1; outside the validated weak-absorption regime");

    const double v_g = group_velocity(p, m);
    const double length = m.cell_length;
    const double transit = length / v_g;
    const double l0 = m.absorption_length();
    const double gd = damping_rate(p);
    const double d1 = -p.delta;
    const double d2 = +p.delta;
    const double wp2 = p.omega_p * p.omega_p;

    // support grid for the retarded-time lookups, fine enough for the beat
    const double beat = std::abs(2.0 * p.delta);
    double dt_sup = grid.dt();
    if (beat > 0.0) dt_sup = std::min(dt_sup, (2.0 * M_PI / beat) / 128.0);
    const double t_lo = grid.t_start - transit;
    const double t_hi = grid.t_end;
    const int n_sup = std::max(2, static_cast<int>(std::ceil((t_hi - t_lo) / dt_sup)) + 1);
    const double dt_actual = (t_hi - t_lo) / (n_sup - 1);

    std::vector<double> sup_alpha(n_sup), sup_beta1(n_sup), sup_beta2(n_sup);
    for (int i = 0; i < n_sup; ++i) {
        const double ts = t_lo + i * dt_actual;
        const Complex chi1 = susceptibility_ratio(p, ts, d1, d2, wp2, gd);
        const Complex chi2 = susceptibility_ratio(p, ts, d2, d1, wp2, gd);
        sup_alpha[i] = chi1.imag() / l0;
        sup_beta1[i] = chi1.real() / (2.0 * l0);
        sup_beta2[i] = chi2.real() / (2.0 * l0);
    }
    auto interp = [&](const std::vector<double>& table, double ts) {
        const double x = (ts - t_lo) / dt_actual;
        const int i = std::clamp(static_cast<int>(std::floor(x)), 0, n_sup - 2);
        const double frac = x - i;
        return table[i] * (1.0 - frac) + table[i + 1] * frac;
    };

    ProbeObservables out;
    out.eta = p.delta * length / v_g;
    out.times.resize(grid.sample_count);
    out.alpha.resize(grid.sample_count);
    out.beta1.resize(grid.sample_count);
    out.beta2.resize(grid.sample_count);
    out.phi.resize(grid.sample_count);
    out.power_ratio.resize(grid.sample_count);

    const double dz = length / n_slices;
    for (int k = 0; k < grid.sample_count; ++k) {
        const double t = grid.time(k);
        out.times[k] = t;
        out.alpha[k] = interp(sup_alpha, t);
        out.beta1[k] = interp(sup_beta1, t);
        out.beta2[k] = interp(sup_beta2, t);

        double rotation = 0.0;
        double optical_depth = 0.0;
        for (int s = 0; s < n_slices; ++s) {
            const double z = (s + 0.5) * dz;
            const double t_ret = retarded_time(t, z, v_g);
            rotation += interp(sup_beta2, t_ret) * dz;
            optical_depth += interp(sup_alpha, t_ret) * dz;
        }
        // d Phi_{1,2}/dz = -+ beta_2, so Phi = (Phi_2 - Phi_1)/2 integrates beta_2
        out.phi[k] = rotation;
        out.power_ratio[k] = std::exp(-optical_depth);
    }
    return out;
}

double cross_modulation_phase(const SystemParams& p, const MediumParams& m,
                              double omega2_sq, double t) {
    if (p.omega_c == 0.0) throw ZeroCoupling();
    m.validate();
    if (omega2_sq < 0.0) throw std::invalid_argument("|Omega_2|^2 must be non-negative");

    // beam 1 on bare resonance: delta1 = 0 kills the single-beam term, only
    // the cross term with delta2 = 2 delta survives
    const Complex chi =
        susceptibility_ratio(p, t, 0.0, 2.0 * p.delta, omega2_sq, damping_rate(p));
    const double beta1 = chi.real() / (2.0 * m.absorption_length());
    return beta1 * m.cell_length;
}

namespace {

struct SpectralSeed {
    double omega = 0.0;
    bool identifiable = false;
};

/// Coarse discrete-spectrum peak of the detrended series; requires an
/// interior local maximum (k >= 2) to call the frequency identifiable.
SpectralSeed spectral_seed(const std::vector<double>& times,
                           const std::vector<double>& values) {
    const int n = static_cast<int>(values.size());
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);

    const int stride = std::max(1, (n + 2047) / 2048);
    std::vector<double> y;
    for (int i = 0; i < n; i += stride) y.push_back(values[i] - mean);
    const int m = static_cast<int>(y.size());
    const double dt = (times.back() - times.front()) / (n - 1) * stride;

    const int kmax = m / 2;
    std::vector<double> mag(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        Complex acc{0.0, 0.0};
        const double w = -2.0 * M_PI * k / m;
        for (int j = 0; j < m; ++j) acc += y[j] * std::polar(1.0, w * j);
        mag[k] = std::abs(acc);
    }
    int kpk = 1;
    for (int k = 2; k <= kmax; ++k)
        if (mag[k] > mag[kpk]) kpk = k;

    SpectralSeed seed;
    if (kpk < 2 || kpk >= kmax) return seed;
    if (!(mag[kpk] > mag[kpk - 1] && mag[kpk] > mag[kpk + 1])) return seed;
    if (!(mag[kpk] > 0.0)) return seed;

    // parabolic refinement on log magnitude
    const double lm = std::log(std::max(mag[kpk - 1], 1e-300));
    const double l0 = std::log(mag[kpk]);
    const double lp = std::log(std::max(mag[kpk + 1], 1e-300));
    const double denom = lm - 2.0 * l0 + lp;
    double shift = 0.0;
    if (std::abs(denom) > 1e-12) shift = std::clamp(0.5 * (lm - lp) / denom, -0.5, 0.5);

    seed.omega = 2.0 * M_PI * (kpk + shift) / (m * dt);
    seed.identifiable = seed.omega > 0.0;
    return seed;
}

double model_value(const double* q, double t) {
    return q[0] + q[1] * std::cos(q[2] * t + q[3]) * std::exp(-q[4] * t);
}

}  // namespace

OscillationFit fit_oscillation(const std::vector<double>& times,
                               const std::vector<double>& values,
                               const OscillationFit& initial_guess) {
    const int n = static_cast<int>(values.size());
    if (n < 50 || times.size() != values.size())
        throw InsufficientData("need at least 50 samples with matching time stamps");

    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    const auto [mn_it, mx_it] = std::minmax_element(values.begin(), values.end());
    const double peak_to_peak = *mx_it - *mn_it;
    const double span = times.back() - times.front();

    OscillationFit flat;
    flat.offset = mean;
    flat.frequency_identifiable = false;
    {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        flat.residual_rms = std::sqrt(ss / n);
    }
    if (peak_to_peak == 0.0) {
        flat.residual_rms = 0.0;
        return flat;
    }

    double w0 = initial_guess.frequency;
    if (!(w0 > 0.0)) {
        const SpectralSeed seed = spectral_seed(times, values);
        if (!seed.identifiable) return flat;  // no oscillation to quantify
        w0 = seed.omega;
    }
    if (span < 2.0 * (2.0 * M_PI / w0))
        throw InsufficientData("series spans fewer than two oscillation periods");

    // amplitude/phase seed from projection onto the seeded frequency
    Complex z{0.0, 0.0};
    for (int j = 0; j < n; ++j)
        z += (values[j] - mean) * std::polar(1.0, -w0 * times[j]);
    z *= 2.0 / static_cast<double>(n);

    double q[5] = {mean, std::abs(z), w0, std::arg(z),
                   initial_guess.damping > 0.0 ? initial_guess.damping : 0.0};
    if (q[1] == 0.0) q[1] = 0.5 * peak_to_peak;

    // Levenberg-Marquardt with analytic Jacobian
    using Vec5 = Eigen::Matrix<double, 5, 1>;
    using Mat5 = Eigen::Matrix<double, 5, 5>;
    const double t_max = std::max(std::abs(times.back()), std::abs(times.front()));
    const double kappa_cap = (t_max > 0.0) ? 500.0 / t_max : 1e300;

    auto cost_of = [&](const double* par) {
        double c = 0.0;
        for (int j = 0; j < n; ++j) {
            const double r = model_value(par, times[j]) - values[j];
            c += r * r;
        }
        return c;
    };

    double lambda = 1e-3;
    double cost = cost_of(q);
    for (int iter = 0; iter < 300; ++iter) {
        Mat5 jtj = Mat5::Zero();
        Vec5 jtr = Vec5::Zero();
        for (int j = 0; j < n; ++j) {
            const double t = times[j];
            const double env = std::exp(-q[4] * t);
            const double arg = q[2] * t + q[3];
            const double c = std::cos(arg), s = std::sin(arg);
            const double r = q[0] + q[1] * c * env - values[j];
            Vec5 g;
            g << 1.0, c * env, -q[1] * t * s * env, -q[1] * s * env, -q[1] * t * c * env;
            jtj += g * g.transpose();
            jtr += g * r;
        }

        bool stepped = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Mat5 a = jtj;
            for (int d = 0; d < 5; ++d) a(d, d) += lambda * std::max(jtj(d, d), 1e-30);
            const Vec5 delta = a.ldlt().solve(-jtr);
            double trial[5];
            for (int d = 0; d < 5; ++d) trial[d] = q[d] + delta[d];
            trial[4] = std::clamp(trial[4], -kappa_cap, kappa_cap);
            const double trial_cost = cost_of(trial);
            if (trial_cost < cost) {
                const double rel_drop = (cost - trial_cost) / std::max(cost, 1e-300);
                std::copy(trial, trial + 5, q);
                cost = trial_cost;
                lambda = std::max(lambda / 3.0, 1e-14);
                stepped = true;
                if (rel_drop < 1e-13) iter = 300;  // converged
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
        if (!stepped) break;
    }

    OscillationFit fit;
    fit.offset = q[0];
    fit.amplitude = q[1];
    fit.frequency = q[2];
    fit.phase = q[3];
    fit.damping = q[4];
    if (fit.amplitude < 0.0) {
        fit.amplitude = -fit.amplitude;
        fit.phase += M_PI;
    }
    if (fit.frequency < 0.0) {
        fit.frequency = -fit.frequency;
        fit.phase = -fit.phase;
    }
    fit.phase = std::remainder(fit.phase, 2.0 * M_PI);
    fit.residual_rms = std::sqrt(cost / n);
    fit.frequency_identifiable = true;

    if (fit.residual_rms > 0.2 * peak_to_peak)
        throw FitDiverged("residual RMS exceeds 20% of the series peak-to-peak");
    return fit;
}

}  // namespace faraday
