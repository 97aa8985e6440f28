#pragma once

// Convergence engine for sequences of forms bounded below "from above"
// by a fixed form: hypothesis checks, approximation defects, resolvent
// error measurements (strong and operator-norm) and the Cea-type
// transfer bound that links them.

#include "qsf/relation.hpp"

namespace qsf {

struct FormSequenceMember {
    CMatrix Fn;    // m_n x m_n
    CMatrix iota;  // m x m_n, injective inclusion dom(a_n) -> dom(a)
};

struct FormSequenceProblem {
    FormInH base;
    Sector sector;
    std::vector<FormSequenceMember> members;
    std::optional<CMatrix> core_basis;  // columns spanning the core D; default dom(a)

    void validate() const;
    /// The member form as a form in H: (F_n, J iota_n).
    FormInH member_form(std::size_t n) const;
    /// Columns of the core basis (identity when none supplied).
    CMatrix core() const;
};

/// Defect-sector hypothesis for member n: a_n(u) - a(u) must lie in the
/// closed sector of the problem angle, checked via the PSD criterion on
/// F_n - iota^H F iota.
SectorCheckReport check_unif_est(const FormSequenceProblem& problem, std::size_t n);

struct ApproximationDefect {
    double value = 0.0;  // ||u - iota v*||_G^2 + |a_n(v*) - a(iota v*)|
    CVector v_star;      // quadratic-part minimizer in dom(a_n)
};

/// Upper bound for the approximation infimum at core vector u: the
/// quadratic part is minimized exactly in the seminorm, then the defect
/// term is evaluated there. Vanishing of this bound certifies the
/// convergence hypothesis.
ApproximationDefect approximation_defect(const FormSequenceProblem& problem,
                                         const CVector& u, std::size_t n);

struct ConvergenceRecord {
    std::size_t n = 0;
    double sector_margin = 0.0;
    double defect_max = 0.0;
    std::vector<double> strong_errors;  // per probe
    double strong_err_max = 0.0;
    double op_norm_err = 0.0;
    double cea_lhs = 0.0;
    double cea_rhs = 0.0;
};

struct ConvergenceReport {
    double lambda = 0.0;
    std::vector<ConvergenceRecord> records;
};

/// Per-member resolvent comparison against the base relation at a
/// common lambda > -gamma, with strong (per-probe) and operator-norm
/// errors, defect maxima over the core, and the transfer-bound pair.
ConvergenceReport resolvent_errors(const FormSequenceProblem& problem, double lambda,
                                   const std::vector<CVector>& probes);

/// The transfer inequality behind the convergence proof, evaluated in
/// the completed picture at shift lambda: lhs = ||A^-1 eta - Jn An^-1 Jn' eta||^2,
/// rhs = candidate-set infimum of the extended Cea bound. lhs <= rhs up
/// to roundoff.
std::pair<double, double> cea_transfer_bound(const FormSequenceProblem& problem,
                                             std::size_t n, const CVector& eta,
                                             double lambda = 1.0);

}  // namespace qsf
