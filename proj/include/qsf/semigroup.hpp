#pragma once

// Degenerate strongly continuous semigroups generated by -A for a
// linear relation A = A1 (+) ({0} x H0): the direct sum of the
// C0-semigroup generated by -A1 on H1 and the zero semigroup on H0.
// T(0) is the orthogonal projection onto H1.

#include "qsf/convergence.hpp"

namespace qsf {

struct DegenerateSemigroup {
    CMatrix P;        // = T(0), projection onto H1
    CMatrix A1;       // generator's operator part, basisH1 coordinates
    CMatrix basisH1;  // d x h orthonormal
};

DegenerateSemigroup semigroup_from_relation(const LinearRelationRep& rep);

/// T(t) = basisH1 exp(-t A1) basisH1^H; T(0) = P exactly.
CMatrix evaluate(const DegenerateSemigroup& sg, double t);

struct SemigroupConvergenceRecord {
    std::size_t n = 0;
    std::vector<double> sup_errors;  // per probe, max over the t grid
};

/// Per-member sup_t ||T_n(t)x - T(t)x|| over a finite time grid.
/// Probes orthogonal to ran(j) see exactly zero error: both semigroups
/// vanish there.
std::vector<SemigroupConvergenceRecord> semigroup_convergence(
    const FormSequenceProblem& problem, const std::vector<CVector>& probes,
    const std::vector<double>& t_grid);

/// Chebyshev-spaced grid in [0, t_max], the default time sampling.
std::vector<double> chebyshev_grid(double t_max, int points = 33);

}  // namespace qsf
