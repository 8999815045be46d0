#ifndef FARADAY_EVOLUTION_HPP
#define FARADAY_EVOLUTION_HPP

#include <cstdint>
#include <vector>

#include "faraday/atomic_model.hpp"
#include "faraday/density_matrix.hpp"

namespace faraday {

/// Equally spaced sampling times, in units of 1/Gamma (or seconds in SI runs).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    int sample_count = 2;

    double dt() const { return (t_end - t_start) / (sample_count - 1); }
    double time(int k) const { return t_start + k * dt(); }

    void validate() const;
};

struct IntegratorStats {
    std::int64_t steps_taken = 0;
    std::int64_t steps_rejected = 0;
    double max_local_error = 0.0;  ///< max tolerance-scaled error of accepted steps
};

struct StateTrajectory {
    TimeGrid grid;
    std::vector<DensityMatrix> states;  ///< one per grid sample
    IntegratorStats stats;

    const DensityMatrix& at(int k) const { return states[k]; }

    /// Zeeman coherence rho21 sampled along the trajectory.
    std::vector<Complex> rho21_series() const;
};

inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr double kDefaultAbsTol = 1e-11;

/// Adaptive Dormand-Prince 5(4) integration of d rho_vec/dt = m rho_vec from
/// t = 0, sampled on the grid through the pair's continuous extension. The
/// state is re-projected onto the Hermitian manifold after each accepted step.
///
/// Throws InvalidTolerance unless rel_tol, abs_tol are in (0, 1e-2], and
/// StepSizeUnderflow if the controller drives the step below 1e-14.
StateTrajectory evolve(const DensityMatrix& rho0, const Superoperator& m,
                       const TimeGrid& grid, double rel_tol = kDefaultRelTol,
                       double abs_tol = kDefaultAbsTol);

/// Matrix-exponential reference propagation: exp(m dt) is formed once (Pade
/// scaling-and-squaring) and applied repeatedly on the uniform grid. Accuracy
/// independent of the adaptive integrator. Throws SingularGenerator when the
/// exponential fails to produce finite entries.
StateTrajectory oracle_evolve(const DensityMatrix& rho0, const Superoperator& m,
                              const TimeGrid& grid);

}  // namespace faraday

#endif
