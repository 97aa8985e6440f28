#include "qsf/experiments.hpp"

#include <cmath>
#include <random>

namespace qsf {

Mesh1D Mesh1D::uniform(double length, int interior_nodes) {
    if (!(length > 0.0) || interior_nodes < 0)
        throw ContractError("Mesh1D::uniform: bad parameters");
    Mesh1D mesh;
    const int n = interior_nodes + 2;
    mesh.nodes.resize(n);
    for (int i = 0; i < n; ++i) mesh.nodes[i] = length * i / (n - 1);
    return mesh;
}

void Mesh1D::validate() const {
    if (nodes.size() < 2)
        throw ContractError("Mesh1D: fewer than 2 nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw ContractError("Mesh1D: nodes not strictly increasing");
}

DirichletAssembly assemble_dirichlet_1d(const Mesh1D& mesh) {
    mesh.validate();
    const int m = mesh.interior_count();
    DirichletAssembly out;
    out.mesh = mesh;
    out.stiffness = Eigen::MatrixXd::Zero(m, m);
    out.mass = Eigen::MatrixXd::Zero(m, m);
    auto h = [&](int e) { return mesh.nodes[e + 1] - mesh.nodes[e]; };  // element e
    for (int i = 0; i < m; ++i) {
        const double hl = h(i), hr = h(i + 1);
        out.stiffness(i, i) = 1.0 / hl + 1.0 / hr;
        out.mass(i, i) = (hl + hr) / 3.0;
        if (i + 1 < m) {
            out.stiffness(i, i + 1) = out.stiffness(i + 1, i) = -1.0 / hr;
            out.mass(i, i + 1) = out.mass(i + 1, i) = hr / 6.0;
        }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(out.mass);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("assemble_dirichlet_1d: mass matrix not SPD");
    const Eigen::MatrixXd j = llt.matrixL().transpose();  // J^H J = mass
    out.form = FormInH(out.stiffness.cast<Complex>(), j.cast<Complex>());
    return out;
}

FormSequenceProblem dirichlet_subdomain_problem(const DirichletAssembly& fine,
                                                const std::vector<Interval>& schedule) {
    const Mesh1D& mesh = fine.mesh;
    const double lo = mesh.nodes.front(), hi = mesh.nodes.back();
    const int m = mesh.interior_count();

    FormSequenceProblem problem;
    problem.base = fine.form;
    problem.sector = Sector(0.0, 0.0);
    for (const Interval& omega : schedule) {
        if (!(omega.a >= lo && omega.b <= hi && omega.a <= omega.b))
            throw ContractError("dirichlet_subdomain_problem: Omega_k not inside Omega");
        std::vector<int> kept;
        for (int i = 1; i <= m; ++i)  // hat at node i, support [x_{i-1}, x_{i+1}]
            if (mesh.nodes[i - 1] > omega.a && mesh.nodes[i + 1] < omega.b)
                kept.push_back(i - 1);
        FormSequenceMember member;
        member.iota = CMatrix::Zero(m, kept.size());
        for (std::size_t c = 0; c < kept.size(); ++c) member.iota(kept[c], c) = 1.0;
        member.Fn = member.iota.adjoint() * problem.base.F * member.iota;
        problem.members.push_back(std::move(member));
    }
    return problem;
}

namespace {

CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    CMatrix z(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
    return z;
}

}  // namespace

FormSequenceProblem rotating_subspace_problem(int d, int big_n, std::uint64_t seed) {
    if (d < 2 || big_n < 1)
        throw ContractError("rotating_subspace_problem: need d >= 2, N >= 1");
    std::mt19937_64 rng(seed);

    CMatrix z = random_complex(d, d, rng);
    z /= spectral_norm(z);
    const CMatrix f = CMatrix::Identity(d, d) + 0.4 * z;  // numerical range in disk(1, 0.4)

    FormSequenceProblem problem;
    problem.base = FormInH(f, CMatrix::Identity(d, d));
    auto theta = fit_minimal_angle(problem.base, 0.0);
    if (!theta)
        throw std::runtime_error("rotating_subspace_problem: base form not sectorial");
    problem.sector = Sector(*theta, 0.0);

    for (int n = 1; n <= big_n; ++n) {
        const Eigen::Index p = std::min<Eigen::Index>(1 + n, d);
        CMatrix k = random_complex(d, d, rng);
        k = 0.5 * (k - k.adjoint());  // skew-Hermitian generator
        k /= spectral_norm(k);
        const CMatrix rotation = matrix_exp(k, 1.0 / n);  // unitary
        FormSequenceMember member;
        member.iota = rotation.leftCols(p);
        member.Fn = member.iota.adjoint() * f * member.iota;
        problem.members.push_back(std::move(member));
    }
    return problem;
}

FormSequenceProblem absorption_problem(const DirichletAssembly& fine, double theta,
                                       double theta0,
                                       const std::vector<double>& eps_schedule) {
    if (!(theta0 >= 0.0 && theta0 < M_PI / 2.0))
        throw ContractError("absorption_problem: theta0 out of [0, pi/2)");
    const Eigen::Index m = fine.form.m();
    FormSequenceProblem problem;
    problem.base = fine.form;
    problem.sector = Sector(theta, 0.0);
    const CMatrix mass = fine.mass.cast<Complex>();
    const Complex ray = std::polar(1.0, theta0);
    for (double eps : eps_schedule) {
        FormSequenceMember member;
        member.iota = CMatrix::Identity(m, m);
        member.Fn = problem.base.F + eps * ray * mass;
        problem.members.push_back(std::move(member));
    }
    return problem;
}

std::vector<CVector> random_probes(Eigen::Index dim, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CVector> probes;
    for (int i = 0; i < count; ++i) {
        CVector x = random_complex(dim, 1, rng);
        probes.push_back(x / x.norm());
    }
    return probes;
}

double smallest_generalized_eigenvalue(const DirichletAssembly& assembly) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(assembly.stiffness,
                                                                     assembly.mass);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("smallest_generalized_eigenvalue: solver failed");
    return solver.eigenvalues()(0);
}

}  // namespace qsf
