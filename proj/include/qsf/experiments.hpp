#pragma once

// Canned experiments: 1D Dirichlet Laplacian on shrinking subdomains,
// non-nested rotating Galerkin subspaces, and an absorption-perturbed
// sequence probing the defect-sector hypothesis.

#include "qsf/semigroup.hpp"

#include <cstdint>

namespace qsf {

struct Mesh1D {
    std::vector<double> nodes;  // strictly increasing; endpoints are Dirichlet

    static Mesh1D uniform(double length, int interior_nodes);
    void validate() const;
    int interior_count() const { return static_cast<int>(nodes.size()) - 2; }
};

struct DirichletAssembly {
    FormInH form;               // F = stiffness, J^H J = mass
    Eigen::MatrixXd stiffness;  // interior hat basis
    Eigen::MatrixXd mass;
    Mesh1D mesh;
};

/// P1 hat functions on interior nodes; H is the mass-orthonormalized
/// coordinate space, so ||J u||_H is the L2 norm of the interpolant.
/// On a uniform mesh of width h the stiffness is tridiag(-1, 2, -1)/h
/// and the mass is tridiag(1, 4, 1)*h/6.
DirichletAssembly assemble_dirichlet_1d(const Mesh1D& mesh);

struct Interval {
    double a = 0.0;
    double b = 0.0;
};

/// dom(a_k) = hats whose closed support lies inside the open interval
/// Omega_k; restriction of the Dirichlet form. Members with empty
/// domains are legal.
FormSequenceProblem dirichlet_subdomain_problem(const DirichletAssembly& fine,
                                                const std::vector<Interval>& schedule);

/// Seeded rotating-subspace Galerkin schedule on C^d: member n is the
/// restriction of a coercive base form to a subspace of dimension
/// min(1 + n, d) rotated by a random unitary of magnitude 1/n, so that
/// subspaces of complementary dimensions intersect trivially while the
/// schedule still fills out the whole space.
FormSequenceProblem rotating_subspace_problem(int d, int big_n, std::uint64_t seed);

/// a_n = a + eps_n * exp(i theta0) * mass form on the full domain; the
/// defect's numerical range lies on the ray arg = theta0.
FormSequenceProblem absorption_problem(const DirichletAssembly& fine, double theta,
                                       double theta0,
                                       const std::vector<double>& eps_schedule);

/// Dimension of member n in a sequence problem.
inline Eigen::Index member_dim(const FormSequenceProblem& p, std::size_t n) {
    return p.members[n].Fn.rows();
}

/// Seeded standard complex Gaussian vectors, the stock probe generator.
std::vector<CVector> random_probes(Eigen::Index dim, int count, std::uint64_t seed);

/// Smallest eigenvalue of the (stiffness, mass) generalized problem.
double smallest_generalized_eigenvalue(const DirichletAssembly& assembly);

}  // namespace qsf
