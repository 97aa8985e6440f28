#pragma once

// Lax-Milgram machinery on completed spaces and the extended Cea bound
// with explicit constants. V and V-check carry the standard inner
// product, so the antidual V* is identified with V and antilinear
// functionals are stored as their Riesz vectors.

#include "qsf/completion.hpp"

#include <cstdint>
#include <vector>

namespace qsf {

/// A bounded coercive form on V = C^r together with its constants:
/// |a(u,v)| <= M ||u|| ||v|| and Re a(u) >= alpha ||u||^2.
struct CoerciveFormOnV {
    CMatrix Atilde;
    double M = 0.0;
    double alpha = 0.0;

    static CoerciveFormOnV from_matrix(const CMatrix& atilde);
};

/// Galerkin data: a on V, a-check on V-check, the comparison map
/// J: V-check -> V, and a sector angle for the defect form
/// b(w,v) = a-check(w,v) - a(Jw, Jv).
struct GalerkinPair {
    CoerciveFormOnV big;
    CoerciveFormOnV small;
    CMatrix Jmap;  // r x r-check
    double theta = 0.0;

    /// Defect form matrix B with b(w,v) = v^H B w.
    CMatrix defect_matrix() const;
};

/// Builds a pair, fitting the minimal sector angle of the defect unless
/// theta_override is given. Throws if the defect is not sectorial.
GalerkinPair make_galerkin_pair(const CMatrix& big, const CMatrix& small,
                                const CMatrix& jmap,
                                std::optional<double> theta_override = std::nullopt);

/// (M, alpha) = (||A||_2, lambda_min of the Hermitian part).
std::pair<double, double> bounds(const CMatrix& atilde);

/// Solve a(u, v) = <eta, v> for all v, i.e. Atilde u = eta.
CVector lm_solve(const CoerciveFormOnV& form, const CVector& eta);

/// Dual operator J' under the Riesz identification of both antiduals:
/// the conjugate transpose.
CMatrix dual_map(const CMatrix& jmap);

struct GalerkinSolution {
    CVector u;       // in V
    CVector ucheck;  // in V-check
};

/// u = A^-1 eta on V, ucheck = Acheck^-1 J' eta on V-check.
GalerkinSolution galerkin_solution(const GalerkinPair& pair, const CVector& eta);

struct SectorCauchySchwarzResult {
    bool passes = false;
    double worst_ratio = 0.0;
};

/// Sampling check of |b(w,v)| <= c (Re b(w))^1/2 (Re b(v))^1/2 with
/// c = 1 + tan(theta) for a sectorial form b. Requires the sector
/// criterion to hold for b first.
SectorCauchySchwarzResult sector_cauchy_schwarz_check(const CMatrix& b_matrix,
                                                      double theta, int samples,
                                                      std::uint64_t seed = 1);

struct CeaCandidateBounds {
    double abs_bound = 0.0;  // (M^2/a^2)||u-Jv||^2 + (c^2/2a)|acheck(v)-a(Jv)|
    double re_bound = 0.0;   // same with Re(...) in place of |...|
};

struct CeaReport {
    double exact_sq = 0.0;  // ||u - J ucheck||^2
    std::vector<CeaCandidateBounds> per_candidate;
    std::size_t best = 0;   // index minimizing abs_bound
    double scale = 0.0;     // M^2 ||u||^2 / alpha^2
    GalerkinSolution solution;
};

/// The extended Cea bound, evaluated at each candidate v in V-check.
/// The reported minimum is an upper bound for the true infimum over
/// V-check.
CeaReport cea_error_bound(const GalerkinPair& pair, const CVector& eta,
                          const std::vector<CVector>& candidates);

/// Default candidate: the least-squares minimizer of ||u - J v||,
/// i.e. the V-orthogonal projection of u onto ran(J) pulled back.
CVector default_candidate(const GalerkinPair& pair, const CVector& u);

}  // namespace qsf
