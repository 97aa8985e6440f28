#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsf/relation.hpp"
#include "test_util.hpp"

using namespace qsf;
using namespace qsf::testing;

namespace {

// H = C^2, dom(a) = C, j(u) = (u, 0), a(u,v) = conj(v) u.
FormInH half_embedded_form() {
    CMatrix f(1, 1);
    f << 1.0;
    CMatrix j(2, 1);
    j << 1.0, 0.0;
    return FormInH(f, j);
}

/// Graph basis of {(R h, h - lambda R h) : h in H}.
CMatrix resolvent_graph(const CMatrix& r, double lambda) {
    const Eigen::Index d = r.rows();
    CMatrix stacked(2 * d, d);
    stacked.topRows(d) = r;
    stacked.bottomRows(d) = CMatrix::Identity(d, d) - lambda * r;
    return column_space(stacked, 1e-12);
}

}  // namespace

TEST_CASE("associated_relation of the identity form") {
    FormInH form(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    LinearRelationRep rep = associated_relation(form, Sector(0.0, 1.0));
    CHECK(spectral_norm(rep.P1 - CMatrix::Identity(2, 2)) <= 1e-10);
    CHECK(spectral_norm(rep.basisH1 * rep.A1 * rep.basisH1.adjoint() -
                        CMatrix::Identity(2, 2)) <= 1e-9);
}

TEST_CASE("associated_relation of the half-embedded form") {
    LinearRelationRep rep = associated_relation(half_embedded_form(), Sector(0.0, 1.0));
    CMatrix expected_p = CMatrix::Zero(2, 2);
    expected_p(0, 0) = 1.0;
    CHECK(spectral_norm(rep.P1 - expected_p) <= 1e-10);
    REQUIRE(rep.A1.rows() == 1);
    CHECK(std::abs(rep.A1(0, 0) - Complex(1.0)) <= 1e-9);
}

TEST_CASE("associated_relation of the empty domain is {0} x H") {
    FormInH form(CMatrix(0, 0), CMatrix(3, 0));
    LinearRelationRep rep = associated_relation(form, Sector(0.0, 0.0));
    CHECK(spectral_norm(rep.P1) <= 1e-12);
    CHECK(rep.A1.rows() == 0);
}

TEST_CASE("resolvent closed forms") {
    FormInH id(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    CMatrix r = resolvent(id, Sector(0.0, 1.0), 1.0);
    CHECK(spectral_norm(r - 0.5 * CMatrix::Identity(2, 2)) <= 1e-12);

    CMatrix r_half = resolvent(half_embedded_form(), Sector(0.0, 1.0), 1.0);
    CMatrix expected = CMatrix::Zero(2, 2);
    expected(0, 0) = 0.5;
    CHECK(spectral_norm(r_half - expected) <= 1e-12);
}

TEST_CASE("resolvent rejects lambda outside the half-line") {
    FormInH id(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    CHECK_THROWS(resolvent(id, Sector(0.0, 1.0), -1.5));
}

TEST_CASE("graph_oracle closed forms") {
    FormInH id(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    GraphOracle oracle = graph_oracle(id, Sector(0.0, 1.0));
    CMatrix expected(4, 2);
    expected << 1, 0, 0, 1, 1, 0, 0, 1;  // {(x, x)}
    expected /= std::sqrt(2.0);
    RealVector angles = principal_angles(oracle.basis, column_space(expected));
    CHECK(angles.maxCoeff() <= 1e-10);

    FormInH empty(CMatrix(0, 0), CMatrix(2, 0));
    GraphOracle zero_graph = graph_oracle(empty, Sector(0.0, 0.0));
    CMatrix expected_zero = CMatrix::Zero(4, 2);
    expected_zero(2, 0) = 1.0;
    expected_zero(3, 1) = 1.0;  // {0} x H
    CHECK(principal_angles(zero_graph.basis, expected_zero).maxCoeff() <= 1e-10);
}

TEST_CASE("graph_oracle refuses large dimensions") {
    FormInH big(CMatrix::Identity(50, 50), CMatrix::Identity(50, 50));
    CHECK_THROWS_AS(graph_oracle(big, Sector(0.0, 1.0)), ContractError);
}

TEST_CASE("oracle graph and resolvent graph agree on random instances") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dims(1, 6);
    for (int trial = 0; trial < 60; ++trial) {
        const Eigen::Index m = dims(rng), d = dims(rng);
        const double theta = 0.4;
        FormInH form = random_quasi_sectorial(m, d, theta, 0.0, rng);
        Sector sector(theta + 1e-9, 0.0);
        GraphOracle oracle = graph_oracle(form, sector);
        const double lambda = 1.0;
        CMatrix r = resolvent(form, sector, lambda);
        // shift: graph of A from the resolvent at lambda
        CMatrix graph = resolvent_graph(r, lambda);
        REQUIRE(graph.cols() == d);
        CHECK(principal_angles(oracle.basis, graph).maxCoeff() <= 1e-8);

        // cross-validation: points on the oracle graph map back through R
        for (int k = 0; k < 5; ++k) {
            CVector coeff = random_vector(d, rng);
            CVector point = oracle.basis * coeff;
            CVector x = point.head(d), y = point.tail(d);
            CHECK((r * (y + lambda * x) - x).norm() <=
                  1e-9 * (1.0 + x.norm() + y.norm()));
        }
    }
}

TEST_CASE("resolvent identity and range structure") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const double theta = 0.5;
        FormInH form = random_quasi_sectorial(4, 5, theta, 0.0, rng);
        Sector sector(theta + 1e-9, 0.0);
        const CMatrix r1 = resolvent(form, sector, 0.5);
        const CMatrix r2 = resolvent(form, sector, 2.0);
        const double scale = spectral_norm(r1) * spectral_norm(r2);
        CHECK(spectral_norm(r1 - r2 - 1.5 * (r1 * r2)) <= 1e-9 * std::max(scale, 1.0));

        LinearRelationRep rep = associated_relation(form, sector);
        const CMatrix q = CMatrix::Identity(5, 5) - rep.P1;
        CHECK(spectral_norm(r1 * q) <= 1e-10 * std::max(1.0, spectral_norm(r1)));
        CHECK(spectral_norm(q * r1) <= 1e-10 * std::max(1.0, spectral_norm(r1)));
    }
}

TEST_CASE("vertex-shift consistency of the operator part") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = 0.3, gamma = 0.7;
        FormInH form = random_quasi_sectorial(4, 4, theta, gamma, rng);
        Sector sector(theta + 1e-9, gamma);
        LinearRelationRep rep = associated_relation(form, sector);

        FormInH shifted(form.F - gamma * (form.J.adjoint() * form.J), form.J);
        LinearRelationRep rep0 = associated_relation(shifted, Sector(theta + 1e-9, 0.0));
        // same H1, operator parts differ by gamma
        CHECK(spectral_norm(rep.P1 - rep0.P1) <= 1e-9);
        const CMatrix a_full = rep.basisH1 * rep.A1 * rep.basisH1.adjoint();
        const CMatrix a0_full = rep0.basisH1 * rep0.A1 * rep0.basisH1.adjoint();
        CHECK(spectral_norm(a_full - a0_full - gamma * rep.P1) <=
              1e-9 * std::max(1.0, spectral_norm(a_full)));
    }
}

TEST_CASE("relation_membership") {
    FormInH id(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2));
    LinearRelationRep rep = associated_relation(id, Sector(0.0, 1.0));
    CVector x(2);
    x << 1.0, -2.0;
    CHECK(relation_membership(rep, x, x));
    CHECK_FALSE(relation_membership(rep, x, 2.0 * x));

    LinearRelationRep half = associated_relation(half_embedded_form(), Sector(0.0, 1.0));
    CVector e1(2), y(2), e2(2);
    e1 << 1.0, 0.0;
    y << 1.0, 7.0;  // H0 component of y is free
    e2 << 0.0, 1.0;
    CHECK(relation_membership(half, e1, y));
    CHECK_FALSE(relation_membership(half, e2, y));  // x must lie in H1
}
