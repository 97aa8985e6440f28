#include "qsf/lax_milgram.hpp"

#include <cmath>
#include <random>

namespace qsf {

CoerciveFormOnV CoerciveFormOnV::from_matrix(const CMatrix& atilde) {
    auto [m, alpha] = bounds(atilde);
    return {atilde, m, alpha};
}

CMatrix GalerkinPair::defect_matrix() const {
    return small.Atilde - Jmap.adjoint() * big.Atilde * Jmap;
}

GalerkinPair make_galerkin_pair(const CMatrix& big, const CMatrix& small,
                                const CMatrix& jmap,
                                std::optional<double> theta_override) {
    GalerkinPair pair;
    pair.big = CoerciveFormOnV::from_matrix(big);
    pair.small = CoerciveFormOnV::from_matrix(small);
    pair.Jmap = jmap;
    if (theta_override) {
        pair.theta = *theta_override;
        const CMatrix b = pair.defect_matrix();
        FormInH defect(b, CMatrix::Identity(b.rows(), b.cols()));
        if (!sector_verify(defect, Sector(pair.theta, 0.0)).passes)
            throw std::runtime_error("make_galerkin_pair: defect not sectorial at given angle");
    } else {
        const CMatrix b = pair.defect_matrix();
        FormInH defect(b, CMatrix::Identity(b.rows(), b.cols()));
        auto theta = fit_minimal_angle(defect, 0.0);
        if (!theta)
            throw std::runtime_error("make_galerkin_pair: defect form not sectorial");
        pair.theta = *theta;
    }
    return pair;
}

std::pair<double, double> bounds(const CMatrix& atilde) {
    if (atilde.rows() != atilde.cols())
        throw ContractError("bounds: matrix not square");
    if (atilde.rows() == 0) return {0.0, std::numeric_limits<double>::infinity()};
    const double m = spectral_norm(atilde);
    const double alpha = hermitian_eig(hermitian_part(atilde)).eigenvalues(0);
    return {m, alpha};
}

CVector lm_solve(const CoerciveFormOnV& form, const CVector& eta) {
    if (!(form.alpha > 0.0))
        throw std::runtime_error("lm_solve: form not coercive");
    if (eta.size() != form.Atilde.rows())
        throw ContractError("lm_solve: eta dimension mismatch");
    if (eta.size() == 0) return CVector(0);
    return form.Atilde.partialPivLu().solve(eta);
}

CMatrix dual_map(const CMatrix& jmap) {
    return jmap.adjoint();
}

GalerkinSolution galerkin_solution(const GalerkinPair& pair, const CVector& eta) {
    GalerkinSolution sol;
    sol.u = lm_solve(pair.big, eta);
    sol.ucheck = lm_solve(pair.small, dual_map(pair.Jmap) * eta);
    return sol;
}

SectorCauchySchwarzResult sector_cauchy_schwarz_check(const CMatrix& b_matrix,
                                                      double theta, int samples,
                                                      std::uint64_t seed) {
    FormInH defect(b_matrix, CMatrix::Identity(b_matrix.rows(), b_matrix.cols()));
    if (!sector_verify(defect, Sector(theta, 0.0)).passes)
        throw std::runtime_error("sector_cauchy_schwarz_check: form not sectorial at angle");
    const double c = 1.0 + std::tan(theta);
    const Eigen::Index n = b_matrix.rows();
    const CMatrix re_b = real_part(b_matrix);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto random_vec = [&] {
        CVector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(gauss(rng), gauss(rng));
        return v;
    };

    SectorCauchySchwarzResult result;
    for (int s = 0; s < samples; ++s) {
        const CVector w = random_vec(), v = random_vec();
        const double re_w = std::max(0.0, (w.adjoint() * re_b * w)(0).real());
        const double re_v = std::max(0.0, (v.adjoint() * re_b * v)(0).real());
        const double denom = c * std::sqrt(re_w) * std::sqrt(re_v);
        if (denom == 0.0) continue;
        const double ratio = std::abs((v.adjoint() * b_matrix * w)(0)) / denom;
        result.worst_ratio = std::max(result.worst_ratio, ratio);
    }
    result.passes = result.worst_ratio <= 1.0 + 1e-9;
    return result;
}

CeaReport cea_error_bound(const GalerkinPair& pair, const CVector& eta,
                          const std::vector<CVector>& candidates) {
    if (candidates.empty())
        throw ContractError("cea_error_bound: candidate set empty");
    CeaReport report;
    report.solution = galerkin_solution(pair, eta);
    const CVector& u = report.solution.u;
    report.exact_sq = (u - pair.Jmap * report.solution.ucheck).squaredNorm();
    report.scale = pair.big.M * pair.big.M * u.squaredNorm() /
                   (pair.big.alpha * pair.big.alpha);

    const double c = 1.0 + std::tan(pair.theta);
    const double quad_coef = pair.big.M * pair.big.M / (pair.big.alpha * pair.big.alpha);
    const double defect_coef = c * c / (2.0 * pair.big.alpha);
    const CMatrix b = pair.defect_matrix();

    double best_abs = std::numeric_limits<double>::infinity();
    for (const CVector& v : candidates) {
        const double quad = quad_coef * (u - pair.Jmap * v).squaredNorm();
        const Complex defect = v.size() > 0 ? (v.adjoint() * b * v)(0) : Complex(0.0);
        CeaCandidateBounds bounds_v;
        bounds_v.abs_bound = quad + defect_coef * std::abs(defect);
        bounds_v.re_bound = quad + defect_coef * defect.real();
        if (bounds_v.abs_bound < best_abs) {
            best_abs = bounds_v.abs_bound;
            report.best = report.per_candidate.size();
        }
        report.per_candidate.push_back(bounds_v);
    }
    return report;
}

CVector default_candidate(const GalerkinPair& pair, const CVector& u) {
    if (pair.Jmap.cols() == 0) return CVector(0);
    return pair.Jmap.completeOrthogonalDecomposition().solve(u);
}

}  // namespace qsf
