#pragma once

// Shared generators for the test suites. Everything is seeded and
// deterministic; oracles here must stay independent of the library
// paths they are used to check.

#include "qsf/forms.hpp"

#include <random>

namespace qsf::testing {

inline CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline CVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
    return random_complex(n, 1, rng);
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
    CMatrix m = random_complex(n, n, rng);
    return 0.5 * (m + m.adjoint());
}

inline CMatrix random_psd(Eigen::Index n, std::mt19937_64& rng) {
    CMatrix m = random_complex(n, n, rng);
    return m.adjoint() * m;
}

/// Random unitary from the QR of a Gaussian matrix.
inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<CMatrix> qr(random_complex(n, n, rng));
    CMatrix q = qr.householderQ();
    CVector diag = qr.matrixQR().diagonal();
    for (Eigen::Index i = 0; i < n; ++i)
        q.col(i) *= diag(i) == Complex(0.0) ? 1.0 : diag(i) / std::abs(diag(i));
    return q;
}

/// Matrix whose numerical range lies in the closed sector of angle
/// theta: L^H diag(rho_j e^{i phi_j}) L with |phi_j| <= theta.
inline CMatrix random_sectorial(Eigen::Index n, double theta, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CMatrix l = random_complex(n, n, rng);
    CVector d(n);
    std::normal_distribution<double> gauss;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double rho = std::abs(gauss(rng)) + 0.1;
        d(i) = std::polar(rho, theta * uni(rng));
    }
    return l.adjoint() * d.asDiagonal() * l;
}

/// Random quasi-sectorial instance: F = gamma J^H J + sectorial part.
inline FormInH random_quasi_sectorial(Eigen::Index m, Eigen::Index d, double theta,
                                      double gamma, std::mt19937_64& rng) {
    CMatrix j = random_complex(d, m, rng);
    return FormInH(gamma * (j.adjoint() * j) + random_sectorial(m, theta, rng), j);
}

/// Independent sector-membership oracle by direct sampling of the
/// quadratic form; returns the worst signed violation found (<= 0 means
/// every sample was inside, up to the slack built into the caller).
inline double worst_sector_violation(const FormInH& form, const Sector& sector,
                                     int samples, std::mt19937_64& rng) {
    const CMatrix shifted = form.F - sector.gamma * (form.J.adjoint() * form.J);
    const double tan_theta = std::tan(sector.theta);
    double worst = -std::numeric_limits<double>::infinity();
    for (int s = 0; s < samples; ++s) {
        CVector u = random_vector(form.m(), rng);
        u /= u.norm();
        const Complex z = (u.adjoint() * shifted * u)(0);
        // violation = max(-Re z, |Im z| - tan(theta) Re z)
        worst = std::max({worst, -z.real(), std::abs(z.imag()) - tan_theta * z.real()});
    }
    return worst;
}

}  // namespace qsf::testing
