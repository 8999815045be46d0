#ifndef FARADAY_TYPES_HPP
#define FARADAY_TYPES_HPP

#include <complex>

#include <Eigen/Dense>

namespace faraday {

using Complex = std::complex<double>;
using Matrix4 = Eigen::Matrix4cd;
using Matrix16 = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

constexpr Complex kImag{0.0, 1.0};

/// Column-major stacking of a 4x4 matrix into a 16-vector:
/// element (i, j) lands at index i + 4*j.
inline Vector16 vectorize(const Matrix4& m) {
    return Eigen::Map<const Vector16>(m.data());
}

inline Matrix4 unvectorize(const Vector16& v) {
    return Eigen::Map<const Matrix4>(v.data());
}

/// Hermitian projection, (m + m^dagger) / 2.
inline Matrix4 hermitize(const Matrix4& m) {
    return 0.5 * (m + m.adjoint());
}

}  // namespace faraday

#endif
