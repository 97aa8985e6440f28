#include "qsf/semigroup.hpp"

#include <cmath>

namespace qsf {

DegenerateSemigroup semigroup_from_relation(const LinearRelationRep& rep) {
    return {rep.P1, rep.A1, rep.basisH1};
}

CMatrix evaluate(const DegenerateSemigroup& sg, double t) {
    if (t < 0.0)
        throw ContractError("evaluate: negative time");
    if (t == 0.0) return sg.P;
    return sg.basisH1 * matrix_exp(sg.A1, -t) * sg.basisH1.adjoint();
}

namespace {

/// Applies T(t) to a fixed probe set. Diagonalizes the generator once
/// when that is numerically safe; otherwise falls back to a matrix
/// exponential per time point.
class Propagator {
public:
    Propagator(const DegenerateSemigroup& sg, const std::vector<CVector>& probes)
        : sg_(sg) {
        coords_.resize(probes.size());
        for (std::size_t p = 0; p < probes.size(); ++p)
            coords_[p] = sg.basisH1.adjoint() * probes[p];
        if (sg.A1.rows() == 0) return;
        Eigen::ComplexEigenSolver<CMatrix> solver(sg.A1);
        if (solver.info() != Eigen::Success) return;
        const CMatrix v = solver.eigenvectors();
        Eigen::PartialPivLU<CMatrix> lu(v);
        const CMatrix recon = v * solver.eigenvalues().asDiagonal() * lu.inverse();
        if (spectral_norm(recon - sg.A1) >
            1e-11 * std::max(1.0, spectral_norm(sg.A1)))
            return;
        diag_ = true;
        v_ = v;
        eigenvalues_ = solver.eigenvalues();
        diag_coords_.resize(coords_.size());
        for (std::size_t p = 0; p < coords_.size(); ++p)
            diag_coords_[p] = lu.solve(coords_[p]);
    }

    CVector apply(double t, std::size_t p) const {
        if (t == 0.0) return sg_.basisH1 * coords_[p];
        if (diag_) {
            CVector scaled = diag_coords_[p];
            for (Eigen::Index i = 0; i < scaled.size(); ++i)
                scaled(i) *= std::exp(-t * eigenvalues_(i));
            return sg_.basisH1 * (v_ * scaled);
        }
        return sg_.basisH1 * (matrix_exp(sg_.A1, -t) * coords_[p]);
    }

private:
    const DegenerateSemigroup& sg_;
    bool diag_ = false;
    CMatrix v_;
    CVector eigenvalues_;
    std::vector<CVector> coords_;
    std::vector<CVector> diag_coords_;
};

}  // namespace

std::vector<SemigroupConvergenceRecord> semigroup_convergence(
    const FormSequenceProblem& problem, const std::vector<CVector>& probes,
    const std::vector<double>& t_grid) {
    problem.validate();
    DegenerateSemigroup base =
        semigroup_from_relation(associated_relation(problem.base, problem.sector));
    Propagator base_prop(base, probes);

    std::vector<SemigroupConvergenceRecord> records;
    for (std::size_t n = 0; n < problem.members.size(); ++n) {
        DegenerateSemigroup member = semigroup_from_relation(
            associated_relation(problem.member_form(n), problem.sector));
        Propagator member_prop(member, probes);
        SemigroupConvergenceRecord rec;
        rec.n = n;
        rec.sup_errors.assign(probes.size(), 0.0);
        for (double t : t_grid)
            for (std::size_t p = 0; p < probes.size(); ++p)
                rec.sup_errors[p] =
                    std::max(rec.sup_errors[p],
                             (member_prop.apply(t, p) - base_prop.apply(t, p)).norm());
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<double> chebyshev_grid(double t_max, int points) {
    if (points < 2 || t_max < 0.0)
        throw ContractError("chebyshev_grid: bad parameters");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) {
        const double x = std::cos(M_PI * i / (points - 1));  // [-1, 1]
        grid[points - 1 - i] = 0.5 * t_max * (x + 1.0);
    }
    return grid;
}

}  // namespace qsf
