#pragma once

// Linear relations associated with quasi-sectorial forms:
// A = A1 (+) ({0} x H1-perp) where H1 = closure(ran j~), plus resolvents
// via the Lax-Milgram route and a brute-force graph oracle for
// cross-checking.

#include "qsf/lax_milgram.hpp"

namespace qsf {

struct LinearRelationRep {
    CMatrix P1;       // d x d orthogonal projection onto H1
    CMatrix A1;       // operator part, in basisH1 coordinates
    CMatrix basisH1;  // d x h, orthonormal columns spanning H1
    double gamma = 0.0;
};

/// The linear relation associated with (a, j): the shifted sectorial
/// form a - gamma <j., j.> is completed, its operator part is recovered
/// from the resolvent at shift +1, and gamma is added back on H1.
LinearRelationRep associated_relation(const FormInH& form, const Sector& sector);

/// (lambda + A)^-1 = j~ Atilde_lambda^-1 j~^H for lambda > -gamma:
/// a bounded everywhere-defined operator on H that annihilates H1-perp.
CMatrix resolvent(const FormInH& form, const Sector& sector, double lambda);

/// Graph of A as a subspace of H x H, assembled directly from the
/// defining condition: (x, y) in A iff there is u in V with j~u = x and
/// a~(u, v) = <y, j~v> for all v. Small dimensions only; this is a test
/// oracle, not a production path.
struct GraphOracle {
    CMatrix basis;  // 2d x d, orthonormal columns, [x; y] stacked
};

GraphOracle graph_oracle(const FormInH& form, const Sector& sector);

/// (x, y) in A, up to a relative tolerance of 1e-9.
bool relation_membership(const LinearRelationRep& rep, const CVector& x,
                         const CVector& y);

}  // namespace qsf
