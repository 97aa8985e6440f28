#include "qsf/relation.hpp"

namespace qsf {

CMatrix resolvent(const FormInH& form, const Sector& sector, double lambda) {
    if (!(lambda > -sector.gamma))
        throw std::runtime_error("resolvent: lambda outside (-gamma, inf)");
    const Eigen::Index d = form.d();
    const CMatrix jhj = form.J.adjoint() * form.J;
    // a_lambda = a + lambda <j., j.> is quasi-sectorial with vertex
    // gamma + lambda > 0 and the same angle; its Gram equals the one of a.
    FormInH shifted(form.F + lambda * jhj, form.J);
    CompletedForm completed = complete(shifted, Sector(sector.theta, sector.gamma + lambda));
    if (completed.r == 0) return CMatrix::Zero(d, d);
    CoerciveFormOnV coercive = CoerciveFormOnV::from_matrix(completed.Atilde);
    if (!(coercive.alpha > 0.0))
        throw std::runtime_error("resolvent: completed form not coercive");
    // (lambda + A)^-1 = j~ Atilde^-1 k~ with k~ = Jtilde^H.
    const CMatrix solve = completed.Atilde.partialPivLu().solve(completed.Jtilde.adjoint());
    return completed.Jtilde * solve;
}

LinearRelationRep associated_relation(const FormInH& form, const Sector& sector) {
    SectorCheckReport check = sector_verify(form, sector);
    if (!check.passes)
        throw std::runtime_error("associated_relation: form fails the sector criterion");

    const Eigen::Index d = form.d();
    const CMatrix jhj = form.J.adjoint() * form.J;
    FormInH base_shifted(form.F - sector.gamma * jhj, form.J);
    const Sector vertex0(sector.theta, 0.0);

    LinearRelationRep rep;
    rep.gamma = sector.gamma;
    CompletedForm completed = complete(base_shifted, vertex0);
    rep.basisH1 = column_space(completed.Jtilde, 1e-12);
    rep.P1 = rep.basisH1 * rep.basisH1.adjoint();

    const Eigen::Index h = rep.basisH1.cols();
    if (h == 0) {
        rep.A1 = CMatrix(0, 0);
        return rep;
    }
    // On H1 the shifted resolvent R = (1 + A1 - gamma)^-1 is invertible.
    const CMatrix r_shift = resolvent(base_shifted, vertex0, 1.0);
    const CMatrix r_h1 = rep.basisH1.adjoint() * r_shift * rep.basisH1;
    rep.A1 = r_h1.partialPivLu().solve(CMatrix::Identity(h, h)) -
             (1.0 - sector.gamma) * CMatrix::Identity(h, h);
    return rep;
}

GraphOracle graph_oracle(const FormInH& form, const Sector& sector) {
    const Eigen::Index d = form.d();
    CompletedForm completed = complete(form, sector);
    const Eigen::Index r = completed.r;
    if (d > 40 || r > 40)
        throw ContractError("graph_oracle: dimension guard exceeded");

    // Unknowns (u, x, y); conditions Jtilde u = x and Atilde u = Jtilde^H y.
    CMatrix block = CMatrix::Zero(d + r, r + 2 * d);
    block.block(0, 0, d, r) = completed.Jtilde;
    block.block(0, r, d, d) = -CMatrix::Identity(d, d);
    block.block(d, 0, r, r) = completed.Atilde;
    block.block(d, r + d, r, d) = -completed.Jtilde.adjoint();

    const CMatrix solutions = null_space(block, 1e-12);
    GraphOracle oracle;
    oracle.basis = column_space(solutions.bottomRows(2 * d), 1e-12);
    if (oracle.basis.cols() != d)
        throw std::runtime_error("graph_oracle: graph dimension != dim H");
    return oracle;
}

bool relation_membership(const LinearRelationRep& rep, const CVector& x,
                         const CVector& y) {
    const double scale = std::max({1.0, x.norm(), y.norm()});
    const double tol = 1e-9 * scale;
    if ((x - rep.P1 * x).norm() > tol) return false;  // x must lie in H1
    const CVector x_coords = rep.basisH1.adjoint() * x;
    // The H0 component of y is free; only the H1 part is constrained.
    return (rep.P1 * y - rep.basisH1 * (rep.A1 * x_coords)).norm() <=
           1e-9 * std::max({1.0, y.norm(), (rep.A1 * x_coords).norm()});
}

}  // namespace qsf
