#include "qsf/convergence.hpp"

#include <cmath>

namespace qsf {

namespace {

/// Minimum-norm solve of the PSD system N v = b with relative cutoff.
CVector psd_solve(const CMatrix& n, const CVector& b) {
    if (n.rows() == 0) return CVector(0);
    EighResult eig = hermitian_eig(n);
    const double cutoff = 1e-12 * std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
    CVector coords = eig.eigenvectors.adjoint() * b;
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        coords(i) = eig.eigenvalues(i) > cutoff ? coords(i) / eig.eigenvalues(i)
                                                : Complex(0.0);
    return eig.eigenvectors * coords;
}

Complex quadratic(const CMatrix& m, const CVector& v) {
    if (v.size() == 0) return Complex(0.0);
    return (v.adjoint() * m * v)(0);
}

/// Max approximation defect over the core columns, factoring the member
/// normal matrix once instead of per column.
double defect_max_over_core(const FormSequenceProblem& problem, const CMatrix& g,
                            std::size_t n, const CMatrix& core) {
    const FormSequenceMember& mem = problem.members[n];
    const CMatrix defect = mem.Fn - mem.iota.adjoint() * problem.base.F * mem.iota;
    const CMatrix normal = mem.iota.adjoint() * g * mem.iota;
    CMatrix pinv;
    if (normal.rows() > 0) {
        EighResult eig = hermitian_eig(normal);
        const double cutoff =
            1e-12 * std::max(eig.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
        RealVector inv = eig.eigenvalues;
        for (Eigen::Index i = 0; i < inv.size(); ++i)
            inv(i) = eig.eigenvalues(i) > cutoff ? 1.0 / eig.eigenvalues(i) : 0.0;
        pinv = eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.adjoint();
    } else {
        pinv = CMatrix(0, 0);
    }
    const CMatrix v_star = pinv * (mem.iota.adjoint() * (g * core));
    const CMatrix resid = core - mem.iota * v_star;
    double worst = 0.0;
    for (Eigen::Index c = 0; c < core.cols(); ++c) {
        const double value =
            std::max(0.0, quadratic(g, resid.col(c)).real()) +
            std::abs(quadratic(defect, CVector(v_star.col(c))));
        worst = std::max(worst, value);
    }
    return worst;
}

}  // namespace

void FormSequenceProblem::validate() const {
    for (std::size_t n = 0; n < members.size(); ++n) {
        const FormSequenceMember& mem = members[n];
        if (mem.iota.rows() != base.m())
            throw ContractError("FormSequenceProblem: iota row count != dim dom(a)");
        if (mem.Fn.rows() != mem.Fn.cols() || mem.Fn.rows() != mem.iota.cols())
            throw ContractError("FormSequenceProblem: member dimensions inconsistent");
        if (mem.iota.cols() > 0) {
            Eigen::SelfAdjointEigenSolver<CMatrix> gram(mem.iota.adjoint() * mem.iota);
            if (!(gram.eigenvalues().minCoeff() > 1e-20))
                throw ContractError("FormSequenceProblem: iota not injective");
        }
    }
    if (core_basis && core_basis->rows() != base.m())
        throw ContractError("FormSequenceProblem: core basis dimension mismatch");
}

FormInH FormSequenceProblem::member_form(std::size_t n) const {
    const FormSequenceMember& mem = members.at(n);
    return FormInH(mem.Fn, base.J * mem.iota);
}

CMatrix FormSequenceProblem::core() const {
    if (core_basis) return *core_basis;
    return CMatrix::Identity(base.m(), base.m());
}

SectorCheckReport check_unif_est(const FormSequenceProblem& problem, std::size_t n) {
    const FormSequenceMember& mem = problem.members.at(n);
    const CMatrix defect = mem.Fn - mem.iota.adjoint() * problem.base.F * mem.iota;
    FormInH defect_form(defect, CMatrix::Identity(defect.rows(), defect.cols()));
    return sector_verify(defect_form, Sector(problem.sector.theta, 0.0));
}

ApproximationDefect approximation_defect(const FormSequenceProblem& problem,
                                         const CVector& u, std::size_t n) {
    const FormSequenceMember& mem = problem.members.at(n);
    const CMatrix g = semi_inner_gram(problem.base, problem.sector.gamma);

    ApproximationDefect out;
    out.v_star = psd_solve(mem.iota.adjoint() * g * mem.iota,
                           mem.iota.adjoint() * (g * u));
    const CVector resid = u - mem.iota * out.v_star;
    const CMatrix defect = mem.Fn - mem.iota.adjoint() * problem.base.F * mem.iota;
    out.value = std::max(0.0, quadratic(g, resid).real()) +
                std::abs(quadratic(defect, out.v_star));
    return out;
}

namespace {

std::pair<double, double> cea_transfer_with(const FormSequenceProblem& problem,
                                            std::size_t n, const CVector& eta,
                                            double lambda, const CompletedForm& big) {
    const double gamma = problem.sector.gamma;
    const FormSequenceMember& mem = problem.members.at(n);
    const Sector shifted_sector(problem.sector.theta, gamma + lambda);

    FormInH member = problem.member_form(n);
    const CMatrix jn_hjn = member.J.adjoint() * member.J;
    FormInH member_shifted(member.F + lambda * jn_hjn, member.J);
    CompletedForm small = complete(member_shifted, shifted_sector);

    // J_n: V_n -> V with J_n q_n = q restricted to dom(a_n).
    const CMatrix jn = extend_operator(big.Q * mem.iota, small);

    const CMatrix defect = small.Atilde - jn.adjoint() * big.Atilde * jn;
    FormInH defect_form(defect, CMatrix::Identity(defect.rows(), defect.cols()));
    auto theta_fit = fit_minimal_angle(defect_form, 0.0, 1e-3);
    const double theta = theta_fit ? *theta_fit : problem.sector.theta;

    GalerkinPair pair;
    pair.big = CoerciveFormOnV::from_matrix(big.Atilde);
    pair.small = CoerciveFormOnV::from_matrix(small.Atilde);
    pair.Jmap = jn;
    pair.theta = theta;

    GalerkinSolution sol = galerkin_solution(pair, eta);
    const double lhs = (sol.u - jn * sol.ucheck).squaredNorm();

    std::vector<CVector> candidates;
    candidates.push_back(default_candidate(pair, sol.u));
    candidates.push_back(sol.ucheck);
    CeaReport report = cea_error_bound(pair, eta, candidates);
    const double rhs = report.per_candidate[report.best].abs_bound;
    return {lhs, rhs};
}

}  // namespace

std::pair<double, double> cea_transfer_bound(const FormSequenceProblem& problem,
                                             std::size_t n, const CVector& eta,
                                             double lambda) {
    const double gamma = problem.sector.gamma;
    if (!(gamma + lambda > 0.0))
        throw std::runtime_error("cea_transfer_bound: vertex gamma + lambda not positive");
    const CMatrix jhj = problem.base.J.adjoint() * problem.base.J;
    FormInH base_shifted(problem.base.F + lambda * jhj, problem.base.J);
    CompletedForm big =
        complete(base_shifted, Sector(problem.sector.theta, gamma + lambda));
    return cea_transfer_with(problem, n, eta, lambda, big);
}

ConvergenceReport resolvent_errors(const FormSequenceProblem& problem, double lambda,
                                   const std::vector<CVector>& probes) {
    problem.validate();
    if (!(lambda > -problem.sector.gamma))
        throw std::runtime_error("resolvent_errors: lambda outside (-gamma, inf)");

    ConvergenceReport report;
    report.lambda = lambda;
    const CMatrix r_base = resolvent(problem.base, problem.sector, lambda);
    const CMatrix core = problem.core();
    const CMatrix gram = semi_inner_gram(problem.base, problem.sector.gamma);

    // Riesz vector of k~(probe 0), used as the transfer-bound functional.
    const CMatrix jhj = problem.base.J.adjoint() * problem.base.J;
    FormInH base_shifted(problem.base.F + lambda * jhj, problem.base.J);
    CompletedForm big = complete(
        base_shifted, Sector(problem.sector.theta, problem.sector.gamma + lambda));

    for (std::size_t n = 0; n < problem.members.size(); ++n) {
        ConvergenceRecord rec;
        rec.n = n;
        rec.sector_margin = check_unif_est(problem, n).margin;

        rec.defect_max = defect_max_over_core(problem, gram, n, core);

        const CMatrix r_n = resolvent(problem.member_form(n), problem.sector, lambda);
        for (const CVector& x : probes)
            rec.strong_errors.push_back((r_n * x - r_base * x).norm());
        rec.strong_err_max = rec.strong_errors.empty()
                                 ? 0.0
                                 : *std::max_element(rec.strong_errors.begin(),
                                                     rec.strong_errors.end());
        rec.op_norm_err = spectral_norm(r_n - r_base);

        if (!probes.empty()) {
            const CVector eta = big.Jtilde.adjoint() * probes.front();
            std::tie(rec.cea_lhs, rec.cea_rhs) =
                cea_transfer_with(problem, n, eta, lambda, big);
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

}  // namespace qsf
