#include "faraday/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace faraday {

void TimeGrid::validate() const {
    if (!(t_start >= 0.0) || !(t_end > t_start))
        throw std::invalid_argument("time grid needs t_end > t_start >= 0");
    if (sample_count < 2)
        throw std::invalid_argument("time grid needs at least 2 samples");
}

std::vector<Complex> StateTrajectory::rho21_series() const {
    std::vector<Complex> out;
    out.reserve(states.size());
    for (const auto& s : states) out.push_back(s.rho21());
    return out;
}

namespace {

// Dormand-Prince 5(4) tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// y1 - yhat1 (5th minus embedded 4th order)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

constexpr double kMinStep = 1e-14;
constexpr std::int64_t kMaxSteps = 50'000'000;

double scaled_norm(const Vector16& v, const Vector16& y0, const Vector16& y1,
                   double rel_tol, double abs_tol) {
    double sum = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double sc =
            abs_tol + rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double q = std::abs(v[i]) / sc;
        sum += q * q;
    }
    return std::sqrt(sum / 16.0);
}

DensityMatrix sample_from_vec(const Vector16& v) {
    return DensityMatrix{hermitize(unvectorize(v))};
}

double initial_step(const Matrix16& m, const Vector16& y0, double span, double rel_tol,
                    double abs_tol) {
    const Vector16 f0 = m * y0;
    const double d0 = scaled_norm(y0, y0, y0, rel_tol, abs_tol);
    const double dd1 = scaled_norm(f0, y0, y0, rel_tol, abs_tol);
    double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
    h0 = std::min(h0, span);
    const Vector16 y1 = y0 + h0 * f0;
    const Vector16 f1 = m * y1;
    const double dd2 = scaled_norm(f1 - f0, y0, y0, rel_tol, abs_tol) / h0;
    const double dmax = std::max(dd1, dd2);
    const double h1 =
        (dmax <= 1e-15) ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, span});
}

}  // namespace

StateTrajectory evolve(const DensityMatrix& rho0, const Superoperator& m,
                       const TimeGrid& grid, double rel_tol, double abs_tol) {
    grid.validate();
    rho0.validate();
    if (!(rel_tol > 0.0) || rel_tol > 1e-2 || !(abs_tol > 0.0) || abs_tol > 1e-2)
        throw InvalidTolerance("tolerances must lie in (0, 1e-2]");

    StateTrajectory traj;
    traj.grid = grid;
    traj.states.resize(grid.sample_count);

    const Matrix16& gen = m.m;
    Vector16 y = vectorize(rho0.m);

    int next_sample = 0;
    if (grid.t_start == 0.0) {
        traj.states[0] = sample_from_vec(y);
        next_sample = 1;
    }

    // PI controller constants (order-5 pair)
    constexpr double beta = 0.04;
    constexpr double expo1 = 0.2 - beta * 0.75;
    constexpr double safe = 0.9;
    constexpr double max_shrink = 5.0;   // per-step factor limits
    constexpr double max_growth = 10.0;

    double t = 0.0;
    double h = initial_step(gen, y, grid.t_end, rel_tol, abs_tol);
    double facold = 1e-4;
    bool last_rejected = false;

    Vector16 k1, k2, k3, k4, k5, k6, k7, y1;

    while (t < grid.t_end) {
        if (traj.stats.steps_taken + traj.stats.steps_rejected > kMaxSteps)
            throw SimulationError("integration step budget exceeded");
        if (!(h > kMinStep) || !std::isfinite(h))
            throw StepSizeUnderflow("adaptive step size fell below 1e-14");
        h = std::min(h, grid.t_end - t);

        k1 = gen * y;
        k2 = gen * (y + h * (a21 * k1)).eval();
        k3 = gen * (y + h * (a31 * k1 + a32 * k2)).eval();
        k4 = gen * (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval();
        k5 = gen * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval();
        k6 = gen *
             (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval();
        y1 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        k7 = gen * y1;

        const Vector16 err_vec =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = scaled_norm(err_vec, y, y1, rel_tol, abs_tol);

        const double fac11 = std::pow(std::max(err, 1e-30), expo1);
        if (err <= 1.0) {
            // accepted; emit every grid sample inside (t, t + h]
            const double t_new = t + h;
            if (next_sample < grid.sample_count) {
                const Vector16 ydiff = y1 - y;
                const Vector16 bspl = h * k1 - ydiff;
                const Vector16 r4 = ydiff - h * k7 - bspl;
                const Vector16 r5 =
                    h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                while (next_sample < grid.sample_count) {
                    const double ts = grid.time(next_sample);
                    if (ts > t_new + 1e-12 * std::max(1.0, t_new)) break;
                    const double theta = std::clamp((ts - t) / h, 0.0, 1.0);
                    const Vector16 u =
                        y + theta * (ydiff + (1.0 - theta) *
                                                 (bspl + theta * (r4 + (1.0 - theta) * r5)));
                    traj.states[next_sample] = sample_from_vec(u);
                    ++next_sample;
                }
            }

            t = t_new;
            y = vectorize(hermitize(unvectorize(y1)));
            traj.stats.steps_taken += 1;
            traj.stats.max_local_error = std::max(traj.stats.max_local_error, err);

            facold = std::max(err, 1e-4);
            double fac = fac11 / std::pow(facold, beta);
            fac = std::max(1.0 / max_growth, std::min(max_shrink, fac / safe));
            double h_new = h / fac;
            if (last_rejected) h_new = std::min(h_new, h);
            last_rejected = false;
            h = h_new;
        } else {
            traj.stats.steps_rejected += 1;
            last_rejected = true;
            h = h / std::min(max_shrink, fac11 / safe);
        }
    }

    // trailing samples at t_end that the loop tolerance skipped
    while (next_sample < grid.sample_count) {
        traj.states[next_sample] = sample_from_vec(y);
        ++next_sample;
    }
    return traj;
}

StateTrajectory oracle_evolve(const DensityMatrix& rho0, const Superoperator& m,
                              const TimeGrid& grid) {
    grid.validate();
    rho0.validate();

    StateTrajectory traj;
    traj.grid = grid;
    traj.states.resize(grid.sample_count);

    const Matrix16 step = (m.m * grid.dt()).exp();
    if (!step.allFinite())
        throw SingularGenerator("matrix exponential of the generator is not finite");

    Vector16 v = vectorize(rho0.m);
    if (grid.t_start > 0.0) {
        const Matrix16 lead = (m.m * grid.t_start).exp();
        if (!lead.allFinite())
            throw SingularGenerator("matrix exponential of the generator is not finite");
        v = lead * v;
    }

    traj.states[0] = DensityMatrix{hermitize(unvectorize(v))};
    for (int k = 1; k < grid.sample_count; ++k) {
        v = step * v;
        traj.states[k] = DensityMatrix{hermitize(unvectorize(v))};
    }
    traj.stats.steps_taken = grid.sample_count - 1;
    return traj;
}

}  // namespace faraday
