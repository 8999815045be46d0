#include "faraday/doppler.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace faraday {

void DopplerConfig::validate() const {
    if (width < 0.0) throw std::invalid_argument("doppler width must be non-negative");
    if (quadrature_points < 8 || quadrature_points > 256)
        throw std::invalid_argument("doppler quadrature points must lie in [8, 256]");
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");

    // Golub-Welsch on the Hermite Jacobi matrix: off-diagonals sqrt(k/2)
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = std::sqrt(0.5 * k);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double total = std::sqrt(M_PI);  // integral of e^{-x^2}
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v0 = solver.eigenvectors()(0, i);
        rule.weights[i] = total * v0 * v0;
    }
    return rule;
}

}  // namespace faraday
