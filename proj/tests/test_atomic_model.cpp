#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "faraday/atomic_model.hpp"

using namespace faraday;

namespace {

SystemParams fig2_params(double delta) {
    return SystemParams::symmetric(1.0, 0.3, 1e-4, delta);
}

Matrix4 random_hermitian_unit_trace(std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    Matrix4 a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Complex{dist(rng), dist(rng)};
    Matrix4 rho = a * a.adjoint();
    rho /= rho.trace();
    return rho;
}

}  // namespace

TEST_CASE("empty interaction gives the zero Hamiltonian") {
    SystemParams p;
    p.gamma = 1.0;
    CHECK(build_hamiltonian(p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Fig. 2 Hamiltonian entries") {
    const Matrix4 h = build_hamiltonian(fig2_params(0.03));
    CHECK(h(1, 1) == Complex{0.03, 0.0});
    CHECK(h(2, 2) == Complex{-0.03, 0.0});
    CHECK(h(3, 3) == Complex{0.0, 0.0});
    CHECK(h(0, 0) == Complex{0.0, 0.0});
    CHECK(h(3, 0) == Complex{-1.0, 0.0});
    CHECK(h(3, 1) == Complex{-0.3, 0.0});
    CHECK(h(3, 2) == Complex{-0.3, 0.0});
    CHECK(h(0, 3) == Complex{-1.0, 0.0});
    CHECK(h(2, 1) == Complex{0.0, 0.0});
}

TEST_CASE("Hamiltonian is exactly Hermitian for random parameters") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        SystemParams p = SystemParams::symmetric(2.0 * u(rng), u(rng), 1e-4 * u(rng),
                                                 0.4 * (u(rng) - 0.5));
        p.phi1 = 2.0 * M_PI * u(rng);
        p.phi2 = 2.0 * M_PI * u(rng);
        p.delta_c = 0.2 * (u(rng) - 0.5);
        const Matrix4 h = build_hamiltonian(p);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("superoperator preserves trace and Hermiticity") {
    const Superoperator op = build_liouvillian(fig2_params(0.03));
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const Matrix4 rho = random_hermitian_unit_trace(rng);
        const Matrix4 rhs = op.apply(rho);
        CHECK(std::abs(rhs.trace()) < 1e-12);
        CHECK((rhs - rhs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("fields-off decay from the upper level") {
    // rho(0) = |3><3| decays through three equal channels:
    // rho33(t) = e^{-3 gamma t}, each ground population picks up a third
    SystemParams p;
    p.gamma = 2.0 / 3.0;
    p.gamma0 = 1e-4;
    const Superoperator op = build_liouvillian(p);

    Matrix4 rho = Matrix4::Zero();
    rho(3, 3) = 1.0;
    Vector16 v = vectorize(rho);

    // exact matrix exponential through scaling of the diagonal-dominant generator
    const double t = 0.7;
    const Matrix16 propagator = (op.m * t).exp();
    const Matrix4 rt = unvectorize((propagator * v).eval());

    const double expected_p3 = std::exp(-3.0 * p.gamma * t);
    CHECK(rt(3, 3).real() == doctest::Approx(expected_p3).epsilon(1e-12));
    for (int i = 0; i < 3; ++i)
        CHECK(rt(i, i).real() ==
              doctest::Approx((1.0 - expected_p3) / 3.0).epsilon(1e-12));
}

TEST_CASE("isolated ground coherence decays at gamma0") {
    SystemParams p;
    p.gamma = 2.0 / 3.0;
    p.gamma0 = 1e-4;
    const Superoperator op = build_liouvillian(p);

    Matrix4 rho = Matrix4::Zero();
    rho(1, 1) = 0.5;
    rho(2, 2) = 0.5;
    rho(2, 1) = 0.5;
    rho(1, 2) = 0.5;

    const double t = 1234.0;
    const Matrix4 rt = unvectorize(((op.m * t).exp() * vectorize(rho)).eval());
    CHECK(rt(2, 1).real() == doctest::Approx(0.5 * std::exp(-p.gamma0 * t)).epsilon(1e-10));
    CHECK(rt(2, 1).imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("optical coherence decays at Gamma = 1.5 gamma, untouched by gamma0") {
    SystemParams p;
    p.gamma = 2.0 / 3.0;
    p.gamma0 = 0.05;  // exaggerated so any leakage into rho31 would show
    const Superoperator op = build_liouvillian(p);

    Matrix4 rho = Matrix4::Zero();
    rho(1, 1) = 0.5;
    rho(3, 3) = 0.5;
    rho(3, 1) = 0.25;
    rho(1, 3) = 0.25;

    const double t1 = 0.5, t2 = 2.5;
    const Matrix4 r1 = unvectorize(((op.m * t1).exp() * vectorize(rho)).eval());
    const Matrix4 r2 = unvectorize(((op.m * t2).exp() * vectorize(rho)).eval());
    const double rate = -std::log(std::abs(r2(3, 1)) / std::abs(r1(3, 1))) / (t2 - t1);
    CHECK(rate == doctest::Approx(p.Gamma()).epsilon(1e-9));
}

TEST_CASE("sub-block structure of the generator") {
    // populations must not leak into ground coherences under relaxation alone
    SystemParams p;
    p.gamma = 2.0 / 3.0;
    p.gamma0 = 1e-3;
    const Superoperator op = build_liouvillian(p);
    Matrix4 rho = Matrix4::Zero();
    rho(0, 0) = 0.4;
    rho(1, 1) = 0.6;
    const Matrix4 rhs = op.apply(rho);
    CHECK(rhs.cwiseAbs().maxCoeff() == 0.0);
}
