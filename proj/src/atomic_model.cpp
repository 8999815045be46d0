#include "faraday/atomic_model.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace faraday {

Matrix4 build_hamiltonian(const SystemParams& p) {
    p.validate();
    Matrix4 h = Matrix4::Zero();
    h(1, 1) = p.delta_1;
    h(2, 2) = p.delta_2;
    h(3, 3) = p.delta_c;
    h(3, 0) = -p.omega_c;
    h(3, 1) = -p.omega_1();
    h(3, 2) = -p.omega_2();
    h(0, 3) = std::conj(h(3, 0));
    h(1, 3) = std::conj(h(3, 1));
    h(2, 3) = std::conj(h(3, 2));
    return h;
}

Superoperator build_liouvillian(const SystemParams& p) {
    const Matrix4 h = build_hamiltonian(p);
    const Matrix4 id = Matrix4::Identity();

    Superoperator op;
    // coherent part for column-major vectorization:
    // vec(H rho) = (I (x) H) vec(rho), vec(rho H) = (H^T (x) I) vec(rho)
    op.m = -kImag * (Eigen::kroneckerProduct(id, h) -
                     Eigen::kroneckerProduct(h.transpose(), id));

    // spontaneous emission |3> -> |i>, i = 0, 1, 2, rate gamma per channel
    for (int i = 0; i < 3; ++i) {
        Matrix4 c = Matrix4::Zero();
        c(i, 3) = 1.0;
        const Matrix4 cdc = c.adjoint() * c;
        op.m += p.gamma *
                (Eigen::kroneckerProduct(c.conjugate(), c).eval() -
                 0.5 * Eigen::kroneckerProduct(id, cdc).eval() -
                 0.5 * Eigen::kroneckerProduct(cdc.transpose(), id).eval());
    }

    // ground-state Zeeman/hyperfine coherence decay, element-wise at gamma0;
    // populations and optical coherences are untouched by this term
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const int k = i + 4 * j;
            op.m(k, k) -= p.gamma0;
        }
    }
    return op;
}

}  // namespace faraday
