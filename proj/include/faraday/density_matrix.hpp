#ifndef FARADAY_DENSITY_MATRIX_HPP
#define FARADAY_DENSITY_MATRIX_HPP

#include "faraday/errors.hpp"
#include "faraday/types.hpp"

namespace faraday {

/// 4x4 Hermitian, unit-trace atomic state, basis order (|0>,|1>,|2>,|3>).
struct DensityMatrix {
    Matrix4 m = Matrix4::Zero();

    DensityMatrix() = default;
    explicit DensityMatrix(const Matrix4& matrix) : m(matrix) {}

    static DensityMatrix from_populations(double p0, double p1, double p2, double p3);

    /// The Fig.-2 style initial state: rho11 = rho22 = 1/2, all else zero.
    static DensityMatrix equal_zeeman_mixture();

    double trace_real() const { return m.trace().real(); }

    /// max_ij |m - m^dagger|
    double hermiticity_error() const;

    double min_eigenvalue() const;

    /// Zeeman coherence rho21 in the phase convention of the analytic
    /// solution, i.e. the element that evolves as e^{i(delta1-delta2)t}
    /// under the symmetric-drive Hamiltonian. For the sign structure used
    /// here that is entry (1,2); its real part equals Re<2|rho|1>.
    Complex rho21() const { return m(1, 2); }

    Complex rho31() const { return m(3, 1); }
    Complex rho32() const { return m(3, 2); }

    /// Throws std::invalid_argument unless Hermitian within 1e-12, unit trace
    /// within 1e-12 and min eigenvalue >= positivity_floor.
    void validate(double positivity_floor = -1e-10) const;
};

}  // namespace faraday

#endif
