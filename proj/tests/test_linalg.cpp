#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsf/linalg.hpp"
#include "test_util.hpp"

using namespace qsf;
using namespace qsf::testing;

TEST_CASE("hermitian_eig on diagonal input") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 2.0;
    m(1, 1) = 1.0;
    EighResult eig = hermitian_eig(m);
    CHECK(eig.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(2.0));
    // eigenvectors are a permuted identity up to phase
    CHECK(std::abs(eig.eigenvectors(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(eig.eigenvectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig on Pauli X") {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    EighResult eig = hermitian_eig(m);
    CHECK(eig.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(eig.eigenvalues(1) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig reconstruction residual on random Hermitian") {
    std::mt19937_64 rng(7);
    for (Eigen::Index n : {6, 16, 64}) {
        CMatrix m = random_hermitian(n, rng);
        EighResult eig = hermitian_eig(m);
        CMatrix rebuilt = eig.eigenvectors *
                          eig.eigenvalues.cast<Complex>().asDiagonal() *
                          eig.eigenvectors.adjoint();
        CHECK(spectral_norm(rebuilt - m) <= 1e-10 * spectral_norm(m));
        CHECK(spectral_norm(eig.eigenvectors * eig.eigenvectors.adjoint() -
                            CMatrix::Identity(n, n)) <= 1e-12);
    }
}

TEST_CASE("hermitian_eig rejects bad input") {
    CHECK_THROWS_AS(hermitian_eig(CMatrix::Zero(2, 3)), ContractError);
    CMatrix m(2, 2);
    m << 0, 1, 0, 0;  // not Hermitian
    CHECK_THROWS_AS(hermitian_eig(m), ContractError);
}

TEST_CASE("matrix_exp of zero is identity") {
    CMatrix z = CMatrix::Zero(3, 3);
    CHECK(spectral_norm(matrix_exp(z, 5.0) - CMatrix::Identity(3, 3)) <= 1e-14);
}

TEST_CASE("matrix_exp of diagonal matrix") {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = -2.0;
    CMatrix e = matrix_exp(m, 1.0);
    CHECK(std::abs(e(0, 0) - std::exp(-1.0)) <= 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(-2.0)) <= 1e-14);
    CHECK(std::abs(e(0, 1)) <= 1e-15);
}

TEST_CASE("matrix_exp of nilpotent block") {
    CMatrix m(2, 2);
    m << 0, 1, 0, 0;
    CMatrix e = matrix_exp(m, 1.0);
    CHECK(std::abs(e(0, 0) - 1.0) <= 1e-15);
    CHECK(std::abs(e(0, 1) - 1.0) <= 1e-15);
    CHECK(std::abs(e(1, 0)) <= 1e-15);
    CHECK(std::abs(e(1, 1) - 1.0) <= 1e-15);
}

TEST_CASE("matrix_exp group law") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 2 + trial % 15;
        CMatrix m = random_complex(n, n, rng);
        const double s = uni(rng), t = uni(rng);
        const double bound = 1e-9 * std::exp((s + t) * spectral_norm(m));
        CHECK(spectral_norm(matrix_exp(m, s + t) - matrix_exp(m, s) * matrix_exp(m, t)) <=
              bound);
    }
}

TEST_CASE("matrix_exp overflow guard") {
    CMatrix m = 100.0 * CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(matrix_exp(m, 10.0), std::range_error);
}

TEST_CASE("nullspace_split keeps only the positive part") {
    CMatrix g = CMatrix::Zero(2, 2);
    g(0, 0) = 1.0;
    NullspaceSplit split = nullspace_split(g, 1e-10);
    REQUIRE(split.kept_eigenvalues.size() == 1);
    CHECK(split.kept_eigenvalues(0) == doctest::Approx(1.0));
    CHECK(std::abs(split.kept_basis(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("nullspace_split keeps all of the identity") {
    NullspaceSplit split = nullspace_split(CMatrix::Identity(5, 5), 1e-10);
    CHECK(split.kept_eigenvalues.size() == 5);
}

TEST_CASE("nullspace_split of a rank-1 Gram matrix recovers the direction") {
    std::mt19937_64 rng(3);
    CVector v = random_vector(4, rng);
    NullspaceSplit split = nullspace_split(v * v.adjoint(), 1e-10);
    REQUIRE(split.kept_eigenvalues.size() == 1);
    CVector unit = v / v.norm();
    // parallel up to phase
    CHECK(std::abs((unit.adjoint() * split.kept_basis.col(0))(0)) == doctest::Approx(1.0));
}

TEST_CASE("nullspace_split idempotence on the compressed Gram matrix") {
    std::mt19937_64 rng(5);
    CMatrix low = random_complex(6, 3, rng);
    CMatrix g = low * low.adjoint();  // rank 3
    NullspaceSplit split = nullspace_split(g, 1e-12);
    CMatrix compressed = split.kept_basis.adjoint() * g * split.kept_basis;
    NullspaceSplit again = nullspace_split(compressed, 1e-12);
    CHECK(again.kept_eigenvalues.size() == split.kept_eigenvalues.size());
}

TEST_CASE("nullspace_split of the zero matrix yields the empty basis") {
    NullspaceSplit split = nullspace_split(CMatrix::Zero(3, 3), 1e-10);
    CHECK(split.kept_eigenvalues.size() == 0);
    CHECK(split.kept_basis.cols() == 0);
}

TEST_CASE("principal angles and intersections") {
    CMatrix e1 = CMatrix::Zero(3, 1);
    e1(0, 0) = 1.0;
    CMatrix e12 = CMatrix::Zero(3, 2);
    e12(0, 0) = 1.0;
    e12(1, 1) = 1.0;
    CHECK(intersection_dim(e1, e12) == 1);
    CMatrix e3 = CMatrix::Zero(3, 1);
    e3(2, 0) = 1.0;
    CHECK(intersection_dim(e1, e3) == 0);
    RealVector angles = principal_angles(e1, e3);
    CHECK(angles(0) == doctest::Approx(M_PI / 2));
}

TEST_CASE("null_space finds graph-style kernels") {
    CMatrix m(1, 2);
    m << 1.0, -1.0;
    CMatrix ns = null_space(m);
    REQUIRE(ns.cols() == 1);
    CHECK(std::abs(ns(0, 0) - ns(1, 0)) <= 1e-14);
}
