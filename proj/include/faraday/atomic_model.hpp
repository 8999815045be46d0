#ifndef FARADAY_ATOMIC_MODEL_HPP
#define FARADAY_ATOMIC_MODEL_HPP

#include "faraday/density_matrix.hpp"
#include "faraday/params.hpp"
#include "faraday/types.hpp"

namespace faraday {

/// 16x16 generator of the master equation acting on the column-major
/// vectorized density matrix: d rho_vec / dt = m * rho_vec.
struct Superoperator {
    Matrix16 m = Matrix16::Zero();

    /// RHS evaluated on a density matrix, reshaped back to 4x4.
    Matrix4 apply(const Matrix4& rho) const { return unvectorize(m * vectorize(rho)); }
};

/// Interaction-picture Hamiltonian (units of hbar absorbed):
///   diag(0, Delta_1, Delta_2, Delta_c) - [Omega_c |3><0| + Omega_1 |3><1|
///   + Omega_2 |3><2| + h.c.]
/// Hermitian by construction.
Matrix4 build_hamiltonian(const SystemParams& p);

/// Full Liouvillian: -i[H, .] plus three spontaneous-decay channels
/// |3> -> |i| at rate gamma each (optical coherences decay at
/// Gamma = 3 gamma / 2) and element-wise decay of the ground-state
/// coherences rho_ij, i != j in {0,1,2}, at rate gamma0.
Superoperator build_liouvillian(const SystemParams& p);

}  // namespace faraday

#endif
