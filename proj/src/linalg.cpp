#include "qsf/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace qsf {

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() >= 32 || m.cols() >= 32) {
        // largest eigenvalue of the Gram matrix; jacobiSvd is cubic with a
        // large constant and dominates profiles at FEM sizes
        const CMatrix gram = m.cols() <= m.rows() ? CMatrix(m.adjoint() * m)
                                                  : CMatrix(m * m.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
    }
    return m.jacobiSvd().singularValues()(0);
}

bool all_finite(const CMatrix& m) {
    return m.allFinite();
}

void require_finite(const CMatrix& m, const char* name) {
    if (!m.allFinite())
        throw ContractError(std::string(name) + ": non-finite entries");
}

CMatrix hermitian_part(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw ContractError("hermitian_part: matrix not square");
    return 0.5 * (m + m.adjoint());
}

CMatrix antihermitian_part(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw ContractError("antihermitian_part: matrix not square");
    return (m - m.adjoint()) / Complex(0.0, 2.0);
}

EighResult hermitian_eig(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw ContractError("hermitian_eig: matrix not square");
    require_finite(m, "hermitian_eig");
    if (m.size() == 0) return {RealVector(0), CMatrix(0, 0)};
    const double scale = m.cwiseAbs().maxCoeff() * std::sqrt(double(m.rows()));
    if ((m - m.adjoint()).norm() > 1e-12 * std::max(scale, 1e-300) * std::sqrt(2.0) &&
        scale > 0.0)
        throw ContractError("hermitian_eig: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(m));
    if (m.size() != 0 && solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eig: eigensolver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix matrix_exp(const CMatrix& m, double t) {
    if (m.rows() != m.cols())
        throw ContractError("matrix_exp: matrix not square");
    require_finite(m, "matrix_exp");
    const CMatrix scaled = t * m;
    // exp(709) is the double overflow edge; stay well clear of it.
    if (scaled.size() != 0 && spectral_norm(scaled) > 300.0)
        throw std::range_error("matrix_exp: ||t*M|| exceeds overflow guard");
    return scaled.exp();
}

NullspaceSplit nullspace_split(const CMatrix& g, double rel_tol) {
    if (g.rows() != g.cols())
        throw ContractError("nullspace_split: matrix not square");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw ContractError("nullspace_split: rel_tol out of (0,1)");
    EighResult eig = hermitian_eig(g);
    const Eigen::Index n = g.rows();
    const double lam_max = n > 0 ? eig.eigenvalues(n - 1) : 0.0;
    if (n > 0 && eig.eigenvalues(0) < -1e-12 * std::abs(lam_max))
        throw ContractError("nullspace_split: matrix not PSD");
    const double cutoff = rel_tol * lam_max;
    Eigen::Index first = 0;
    while (first < n && eig.eigenvalues(first) <= cutoff) ++first;
    const Eigen::Index kept = n - first;
    NullspaceSplit out;
    out.kept_basis = eig.eigenvectors.rightCols(kept);
    out.kept_eigenvalues = eig.eigenvalues.tail(kept);
    return out;
}

namespace {

/// Thin SVD with a solver choice keyed on size; jacobiSvd at FEM sizes
/// costs minutes.
template <unsigned Options>
void svd_compute(const CMatrix& m, Eigen::JacobiSVD<CMatrix>& jac,
                 Eigen::BDCSVD<CMatrix>& bdc, bool& use_bdc) {
    use_bdc = m.rows() >= 32 && m.cols() >= 32;
    if (use_bdc)
        bdc.compute(m, Options);
    else
        jac.compute(m, Options);
}

}  // namespace

CMatrix column_space(const CMatrix& m, double rel_tol) {
    if (m.size() == 0) return CMatrix(m.rows(), 0);
    Eigen::JacobiSVD<CMatrix> jac;
    Eigen::BDCSVD<CMatrix> bdc;
    bool use_bdc = false;
    svd_compute<Eigen::ComputeThinU>(m, jac, bdc, use_bdc);
    const RealVector sv = use_bdc ? bdc.singularValues() : jac.singularValues();
    const double cutoff = rel_tol * sv(0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    if (sv(0) == 0.0) rank = 0;
    return (use_bdc ? bdc.matrixU() : jac.matrixU()).leftCols(rank);
}

CMatrix null_space(const CMatrix& m, double rel_tol) {
    if (m.rows() == 0) return CMatrix::Identity(m.cols(), m.cols());
    if (m.cols() == 0) return CMatrix(0, 0);
    Eigen::JacobiSVD<CMatrix> jac;
    Eigen::BDCSVD<CMatrix> bdc;
    bool use_bdc = false;
    svd_compute<Eigen::ComputeFullV>(m, jac, bdc, use_bdc);
    const RealVector sv = use_bdc ? bdc.singularValues() : jac.singularValues();
    const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    if (sv.size() > 0 && sv(0) == 0.0) rank = 0;
    return (use_bdc ? bdc.matrixV() : jac.matrixV()).rightCols(m.cols() - rank);
}

RealVector principal_angles(const CMatrix& basis_a, const CMatrix& basis_b) {
    if (basis_a.rows() != basis_b.rows())
        throw ContractError("principal_angles: ambient dimensions differ");
    const Eigen::Index k = std::min(basis_a.cols(), basis_b.cols());
    if (k == 0) return RealVector(0);
    CMatrix cross = basis_a.adjoint() * basis_b;
    RealVector sv = cross.jacobiSvd().singularValues();
    // sine-based values resolve angles below the acos floor near cos = 1
    CMatrix residual = basis_b - basis_a * cross;
    RealVector sines = residual.jacobiSvd().singularValues();
    RealVector angles(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const double c = std::min(1.0, std::max(-1.0, sv(i)));
        double angle = std::acos(c);
        if (c > M_SQRT1_2 && i < sines.size()) {
            const double s = std::min(1.0, sines(sines.size() - 1 - i));
            angle = std::asin(s);
        }
        angles(i) = angle;
    }
    return angles;
}

int intersection_dim(const CMatrix& basis_a, const CMatrix& basis_b, double ang_tol) {
    RealVector angles = principal_angles(basis_a, basis_b);
    int dim = 0;
    for (Eigen::Index i = 0; i < angles.size(); ++i)
        if (angles(i) < ang_tol) ++dim;
    return dim;
}

}  // namespace qsf
