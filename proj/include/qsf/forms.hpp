#pragma once

// Sesquilinear forms in a Hilbert space H and their sector geometry.
//
// Convention (fixed throughout the library): a form matrix F represents
//   a(x, y) = y^H F x,
// i.e. a is linear in the FIRST argument and conjugate-linear in the
// second. The opposite convention is common elsewhere; mind the adjoint
// when importing data.

#include "qsf/linalg.hpp"

#include <optional>

namespace qsf {

/// Closed sector gamma + conj(Sigma_theta) in the complex plane.
struct Sector {
    double theta = 0.0;  // half-opening angle, radians, in [0, pi/2)
    double gamma = 0.0;  // vertex

    Sector() = default;
    Sector(double theta_, double gamma_);
};

/// A form in H: the pair (a, j) with dom(a) = C^m, H = C^d,
/// a(x,y) = y^H F x and j represented by the d x m matrix J.
struct FormInH {
    CMatrix F;  // m x m
    CMatrix J;  // d x m

    FormInH() = default;
    FormInH(CMatrix f, CMatrix j);

    Eigen::Index m() const { return F.rows(); }
    Eigen::Index d() const { return J.rows(); }
};

struct SectorCheckReport {
    bool passes = false;
    double margin = 0.0;              // min eigenvalue of the three PSD tests / ||F||
    std::optional<CVector> witness;   // u with a(u) - gamma*||ju||^2 outside the sector
};

/// Membership z in conj(Sigma_theta): z = 0 or Re z > 0 with
/// |Im z| <= tan(theta) * Re z; the boundary counts as inside.
bool sigma_membership(Complex z, double theta);

/// (F + F^H)/2; the matrix of Re a.
CMatrix real_part(const CMatrix& f);

/// (F - F^H)/(2i); the matrix of Im a.
CMatrix imag_part(const CMatrix& f);

/// Quasi-sectoriality test: with F' = F - gamma * J^H J, the form is
/// quasi-sectorial of angle theta and vertex gamma iff Re F',
/// tan(theta)*Re F' + Im F' and tan(theta)*Re F' - Im F' are all PSD.
/// Always produces a report; a failing report carries a witness vector.
SectorCheckReport sector_verify(const FormInH& form, const Sector& sector);

/// Gram matrix of the semi-inner product Re a + (1-gamma) <j., j.>_H.
/// Throws if the result is not PSD to within -1e-8 * ||G|| (the form is
/// then not quasi-sectorial with this vertex).
CMatrix semi_inner_gram(const FormInH& form, double gamma);

/// Smallest angle (to `precision` absolute, default 1e-6) at which
/// sector_verify passes with the given vertex, or nullopt if even
/// theta = pi/2 - 1e-6 fails. The returned angle always passes.
std::optional<double> fit_minimal_angle(const FormInH& form, double gamma,
                                        double precision = 1e-6);

}  // namespace qsf
