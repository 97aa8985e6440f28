#pragma once

// Finite-dimensional completion of (dom(a), <.,.>_{a,j}): the quotient
// by the Gram null space, rescaled so that V = C^r carries the standard
// inner product. The extensions a~ and j~ then live on plain matrices
// and every Riesz identification downstream is the identity.

#include "qsf/forms.hpp"

namespace qsf {

struct CompletedForm {
    Eigen::Index r = 0;   // dim V
    CMatrix Q;            // r x m, the map q; Q^H Q = Gram
    CMatrix Qpinv;        // m x r, right inverse of Q modulo null(G)
    CMatrix Atilde;       // r x r, the extended form a~
    CMatrix Jtilde;       // d x r, the extended operator j~
    double residual_form = 0.0;  // ||F - Q^H Atilde Q||
    double residual_j = 0.0;     // ||J - Jtilde Q||
};

/// Build (V, q, a~, j~) from a quasi-sectorial form. Fails if a or j is
/// not continuous w.r.t. the seminorm (possible only for inconsistent
/// numerical data; the well-definedness residuals are checked).
CompletedForm complete(const FormInH& form, const Sector& sector);

/// Extension of a seminorm-continuous map L: dom(a) -> C^w to V,
/// i.e. the unique L~ with L~ q = L. Throws if L does not factor
/// through the quotient.
CMatrix extend_operator(const CMatrix& l, const CompletedForm& completed);

}  // namespace qsf
