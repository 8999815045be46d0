#include "faraday/density_matrix.hpp"

#include <stdexcept>

namespace faraday {

DensityMatrix DensityMatrix::from_populations(double p0, double p1, double p2, double p3) {
    DensityMatrix rho;
    rho.m(0, 0) = p0;
    rho.m(1, 1) = p1;
    rho.m(2, 2) = p2;
    rho.m(3, 3) = p3;
    rho.validate();
    return rho;
}

DensityMatrix DensityMatrix::equal_zeeman_mixture() {
    return from_populations(0.0, 0.5, 0.5, 0.0);
}

double DensityMatrix::hermiticity_error() const {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix4> solver(hermitize(m));
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double positivity_floor) const {
    if (hermiticity_error() >= 1e-12)
        throw std::invalid_argument("density matrix is not Hermitian within 1e-12");
    if (std::abs(m.trace() - Complex{1.0, 0.0}) >= 1e-12)
        throw std::invalid_argument("density matrix trace differs from 1 beyond 1e-12");
    if (min_eigenvalue() < positivity_floor)
        throw std::invalid_argument("density matrix has an eigenvalue below the positivity floor");
}

}  // namespace faraday
