#include "qsf/forms.hpp"

#include <cmath>

namespace qsf {

namespace {
constexpr double kPsdTol = 1e-10;
}

Sector::Sector(double theta_, double gamma_) : theta(theta_), gamma(gamma_) {
    if (!(theta >= 0.0 && theta < M_PI / 2.0) || !std::isfinite(std::tan(theta)))
        throw ContractError("Sector: theta out of [0, pi/2)");
    if (!std::isfinite(gamma))
        throw ContractError("Sector: gamma not finite");
}

FormInH::FormInH(CMatrix f, CMatrix j) : F(std::move(f)), J(std::move(j)) {
    if (F.rows() != F.cols())
        throw ContractError("FormInH: F not square");
    if (J.cols() != F.cols())
        throw ContractError("FormInH: J column count != dim dom(a)");
    require_finite(F, "FormInH.F");
    require_finite(J, "FormInH.J");
}

bool sigma_membership(Complex z, double theta) {
    if (!(theta >= 0.0 && theta < M_PI / 2.0))
        throw ContractError("sigma_membership: theta out of [0, pi/2)");
    if (z == Complex(0.0, 0.0)) return true;
    if (!(z.real() > 0.0)) return false;
    // angle comparison keeps boundary rays in despite tan() rounding
    return std::atan2(std::abs(z.imag()), z.real()) <= theta * (1.0 + 4e-16) + 4e-16;
}

CMatrix real_part(const CMatrix& f) {
    return hermitian_part(f);
}

CMatrix imag_part(const CMatrix& f) {
    return antihermitian_part(f);
}

SectorCheckReport sector_verify(const FormInH& form, const Sector& sector) {
    SectorCheckReport report;
    if (form.m() == 0) {  // empty domain: vacuously sectorial
        report.passes = true;
        report.margin = 0.0;
        return report;
    }
    const CMatrix shifted = form.F - sector.gamma * (form.J.adjoint() * form.J);
    const CMatrix re = real_part(shifted);
    const CMatrix im = imag_part(shifted);
    const double tan_theta = std::tan(sector.theta);

    double norm_f = spectral_norm(form.F);
    const double scale = norm_f > 0.0 ? norm_f : std::max(spectral_norm(shifted), 1.0);

    const CMatrix tests[3] = {re, tan_theta * re + im, tan_theta * re - im};
    report.margin = std::numeric_limits<double>::infinity();
    for (const CMatrix& t : tests) {
        EighResult eig = hermitian_eig(t);
        const double normalized = eig.eigenvalues(0) / scale;
        if (normalized < report.margin) {
            report.margin = normalized;
            if (normalized < -kPsdTol)
                report.witness = eig.eigenvectors.col(0);
        }
    }
    report.passes = report.margin >= -kPsdTol;
    if (report.passes) report.witness.reset();
    return report;
}

CMatrix semi_inner_gram(const FormInH& form, double gamma) {
    CMatrix g = real_part(form.F) + (1.0 - gamma) * (form.J.adjoint() * form.J);
    g = hermitian_part(g);  // kill rounding skew
    if (form.m() > 0) {
        EighResult eig = hermitian_eig(g);
        const double scale = std::max(spectral_norm(g), 1e-300);
        if (eig.eigenvalues(0) < -1e-8 * scale)
            throw std::runtime_error(
                "semi_inner_gram: not quasi-sectorial with this vertex (Gram not PSD)");
    }
    return g;
}

std::optional<double> fit_minimal_angle(const FormInH& form, double gamma,
                                        double precision) {
    const double theta_max = M_PI / 2.0 - 1e-6;
    if (form.m() == 0) return 0.0;
    // the shifted real/imaginary parts and the scale do not move with
    // theta; factor them out of the bisection
    const CMatrix shifted = form.F - gamma * (form.J.adjoint() * form.J);
    const CMatrix re = real_part(shifted);
    const CMatrix im = imag_part(shifted);
    const double norm_f = spectral_norm(form.F);
    const double scale =
        norm_f > 0.0 ? norm_f : std::max(spectral_norm(shifted), 1.0);
    auto min_eig = [](const CMatrix& t) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(t, Eigen::EigenvaluesOnly);
        return solver.eigenvalues()(0);
    };
    if (min_eig(re) < -kPsdTol * scale) return std::nullopt;
    auto passes = [&](double theta) {
        const double tan_theta = std::tan(theta);
        const CMatrix base = tan_theta * re;
        return min_eig(base + im) >= -kPsdTol * scale &&
               min_eig(base - im) >= -kPsdTol * scale;
    };
    if (!passes(theta_max)) return std::nullopt;
    double lo = 0.0, hi = theta_max;
    if (passes(lo)) return 0.0;
    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        (passes(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace qsf
