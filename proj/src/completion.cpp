#include "qsf/completion.hpp"

#include <cmath>

namespace qsf {

CompletedForm complete(const FormInH& form, const Sector& sector) {
    SectorCheckReport check = sector_verify(form, sector);
    if (!check.passes)
        throw std::runtime_error("complete: form fails the sector criterion");

    const CMatrix g = semi_inner_gram(form, sector.gamma);
    NullspaceSplit split = nullspace_split(g, 1e-12);
    const Eigen::Index r = split.kept_eigenvalues.size();

    CompletedForm out;
    out.r = r;
    RealVector sqrt_lam = split.kept_eigenvalues.cwiseSqrt();
    out.Q = sqrt_lam.asDiagonal() * split.kept_basis.adjoint();
    out.Qpinv = split.kept_basis * sqrt_lam.cwiseInverse().asDiagonal();
    out.Atilde = out.Qpinv.adjoint() * form.F * out.Qpinv;
    out.Jtilde = form.J * out.Qpinv;

    out.residual_form = spectral_norm(form.F - out.Q.adjoint() * out.Atilde * out.Q);
    out.residual_j = spectral_norm(form.J - out.Jtilde * out.Q);
    const double tol_f = 1e-8 * spectral_norm(form.F) + 1e-12;
    const double tol_j = 1e-8 * spectral_norm(form.J) + 1e-12;
    if (out.residual_form > tol_f || out.residual_j > tol_j)
        throw std::runtime_error(
            "complete: form/j not well-defined on quotient (residuals " +
            std::to_string(out.residual_form) + ", " + std::to_string(out.residual_j) + ")");
    return out;
}

CMatrix extend_operator(const CMatrix& l, const CompletedForm& completed) {
    if (l.cols() != completed.Q.cols())
        throw ContractError("extend_operator: L column count != dim dom(a)");
    CMatrix extended = l * completed.Qpinv;
    const double residual = spectral_norm(l - extended * completed.Q);
    if (residual > 1e-8 * spectral_norm(l) + 1e-12)
        throw std::runtime_error("extend_operator: map not seminorm-continuous");
    return extended;
}

}  // namespace qsf
