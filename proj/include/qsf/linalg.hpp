#pragma once

// Dense complex linear-algebra kernel shared by all other components.
// All matrices are dense, double precision; tolerances are relative to
// spectral norms. Everything here is a pure function over immutable
// values and safe to call concurrently.

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace qsf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown when an operation's input contract is violated.
struct ContractError : std::invalid_argument {
    explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

/// Largest singular value; 0 for empty matrices.
double spectral_norm(const CMatrix& m);

bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* name);

/// Hermitian part (M + M^H)/2.
CMatrix hermitian_part(const CMatrix& m);
/// Skew part divided by i, i.e. (M - M^H)/(2i); Hermitian.
CMatrix antihermitian_part(const CMatrix& m);

struct EighResult {
    RealVector eigenvalues;  // ascending
    CMatrix eigenvectors;    // unitary, columns match eigenvalues
};

/// Spectral decomposition of a Hermitian matrix. Input must be Hermitian
/// to within 1e-12 * ||M||; the symmetrized matrix is decomposed.
EighResult hermitian_eig(const CMatrix& m);

/// exp(t*M) by scaling-and-squaring with Pade approximation.
/// Refuses inputs with ||t*M|| beyond the overflow guard.
CMatrix matrix_exp(const CMatrix& m, double t);

struct NullspaceSplit {
    CMatrix kept_basis;          // orthonormal columns
    RealVector kept_eigenvalues; // ascending, all > rel_tol * lambda_max
};

/// Eigenpairs of a Hermitian PSD matrix above the relative cutoff
/// rel_tol * lambda_max. An empty basis (all directions cut) is valid.
NullspaceSplit nullspace_split(const CMatrix& g, double rel_tol);

/// Orthonormal basis of the column space, singular values above
/// rel_tol * sigma_max kept.
CMatrix column_space(const CMatrix& m, double rel_tol = 1e-12);

/// Orthonormal basis of the (right) null space of m.
CMatrix null_space(const CMatrix& m, double rel_tol = 1e-12);

/// Principal angles between the column spans of two orthonormal bases,
/// ascending, in [0, pi/2].
RealVector principal_angles(const CMatrix& basis_a, const CMatrix& basis_b);

/// Dimension of span(a) ∩ span(b) counting principal angles below ang_tol.
int intersection_dim(const CMatrix& basis_a, const CMatrix& basis_b, double ang_tol = 1e-7);

}  // namespace qsf
