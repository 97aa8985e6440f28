// qsf: quasi-sectorial form toolkit.
//
// Subcommands: check, complete, resolvent, cea, converge, semigroup,
// demo. Exit codes: 0 success, 2 hypothesis-violation report, 1 error.

#include "qsf/io.hpp"
#include "qsf/relation.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace qsf;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct OutputOptions {
    std::string out_path;  // empty = stdout
    bool json = false;
    bool csv = false;
    bool quiet = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
    cmd->add_option("--out", opts.out_path, "output file (default stdout)");
    cmd->add_flag("--json", opts.json, "emit JSON");
    cmd->add_flag("--csv", opts.csv, "emit CSV");
    cmd->add_flag("--quiet", opts.quiet, "suppress progress notes");
}

void emit(const OutputOptions& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) throw std::runtime_error("cannot write " + opts.out_path);
    out << text;
}

std::string matrix_pretty(const CMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const Complex z = m(i, j);
            out << format_double(z.real()) << (z.imag() >= 0 ? "+" : "-")
                << format_double(std::abs(z.imag())) << "i";
            if (j + 1 < m.cols()) out << ' ';
        }
        out << '\n';
    }
    return out.str();
}

int run_check(const std::string& spec_path, double theta, double gamma,
              const OutputOptions& opts) {
    FormInH form = form_from_json(load_json_file(spec_path));
    SectorCheckReport report = sector_verify(form, Sector(theta, gamma));
    nlohmann::json out = {{"passes", report.passes}, {"margin", report.margin}};
    if (report.witness) out["witness"] = matrix_to_json(*report.witness);
    emit(opts, out.dump(2) + "\n");
    return report.passes ? kExitOk : kExitViolation;
}

int run_complete(const std::string& spec_path, double theta, double gamma,
                 const OutputOptions& opts) {
    FormInH form = form_from_json(load_json_file(spec_path));
    CompletedForm completed = complete(form, Sector(theta, gamma));
    emit(opts, completed_to_json(completed).dump(2) + "\n");
    return kExitOk;
}

int run_resolvent(const std::string& spec_path, double theta, double gamma,
                  double lambda, const OutputOptions& opts) {
    FormInH form = form_from_json(load_json_file(spec_path));
    CMatrix r = resolvent(form, Sector(theta, gamma), lambda);
    if (opts.json)
        emit(opts, nlohmann::json{{"d", r.rows()}, {"R", matrix_to_json(r)}}.dump(2) + "\n");
    else
        emit(opts, matrix_pretty(r));
    return kExitOk;
}

int run_cea(const std::string& spec_path, const OutputOptions& opts) {
    // schema: {"r", "rc", "big", "small", "J", "eta", "theta"?}
    nlohmann::json j = load_json_file(spec_path);
    const int r = j.at("r").get<int>();
    const int rc = j.at("rc").get<int>();
    CMatrix big = matrix_from_json(j.at("big"), r, r, "big");
    CMatrix small = matrix_from_json(j.at("small"), rc, rc, "small");
    CMatrix jmap = matrix_from_json(j.at("J"), r, rc, "J");
    CVector eta = matrix_from_json(j.at("eta"), r, 1, "eta");
    std::optional<double> theta;
    if (j.contains("theta")) theta = j["theta"].get<double>();

    GalerkinPair pair = make_galerkin_pair(big, small, jmap, theta);
    GalerkinSolution sol = galerkin_solution(pair, eta);
    CeaReport report =
        cea_error_bound(pair, eta, {default_candidate(pair, sol.u), sol.ucheck});
    nlohmann::json out = {{"exact_sq", report.exact_sq},
                          {"scale", report.scale},
                          {"theta", pair.theta},
                          {"M", pair.big.M},
                          {"alpha", pair.big.alpha},
                          {"best", report.best}};
    nlohmann::json cands = nlohmann::json::array();
    for (const auto& cand : report.per_candidate)
        cands.push_back({{"abs_bound", cand.abs_bound}, {"re_bound", cand.re_bound}});
    out["candidates"] = cands;
    emit(opts, out.dump(2) + "\n");
    return kExitOk;
}

FormSequenceProblem load_problem(const std::string& spec_path) {
    nlohmann::json j = load_json_file(spec_path);
    if (j.contains("kind")) return build_experiment(experiment_from_json(j));
    return problem_from_json(j);
}

int run_converge(const std::string& spec_path, double lambda, int probe_count,
                 std::uint64_t seed, const OutputOptions& opts) {
    FormSequenceProblem problem = load_problem(spec_path);
    bool hypothesis_ok = true;
    for (std::size_t n = 0; n < problem.members.size(); ++n)
        hypothesis_ok = hypothesis_ok && check_unif_est(problem, n).passes;

    ConvergenceReport report = resolvent_errors(
        problem, lambda, random_probes(problem.base.d(), probe_count, seed));
    std::ostringstream text;
    if (opts.json)
        text << convergence_to_json(report).dump(2) << '\n';
    else
        write_convergence_csv(text, report);
    emit(opts, text.str());
    if (!hypothesis_ok && !opts.quiet)
        std::cerr << "hypothesis violation: defect leaves the sector for some member\n";
    return hypothesis_ok ? kExitOk : kExitViolation;
}

int run_semigroup(const std::string& spec_path, double t_max, int t_points,
                  int probe_count, std::uint64_t seed, const OutputOptions& opts) {
    FormSequenceProblem problem = load_problem(spec_path);
    auto records = semigroup_convergence(
        problem, random_probes(problem.base.d(), probe_count, seed),
        chebyshev_grid(t_max, t_points));
    std::ostringstream text;
    write_semigroup_csv(text, records);
    emit(opts, text.str());
    return kExitOk;
}

int run_demo(const std::string& kind, const ExperimentSpec& spec, int probe_count,
             const OutputOptions& opts) {
    if (kind == "galerkin-1d") {
        // fine/coarse 1D Poisson pair, extended Cea report
        DirichletAssembly fine = assemble_dirichlet_1d(Mesh1D::uniform(1.0, spec.d));
        CompletedForm completed = complete(
            FormInH(fine.form.F + spec.lambda * (fine.form.J.adjoint() * fine.form.J),
                    fine.form.J),
            Sector(0.0, spec.lambda));
        const int coarse = std::max(1, spec.d / 4);
        CMatrix embed = CMatrix::Zero(spec.d, coarse);
        for (int c = 0; c < coarse; ++c) {
            const double xc = (c + 1) / (coarse + 1.0);
            for (int i = 0; i < spec.d; ++i) {
                const double x = (i + 1) / (spec.d + 1.0);
                embed(i, c) = std::max(0.0, 1.0 - std::abs(x - xc) * (coarse + 1.0));
            }
        }
        CMatrix jmap = completed.Q * embed;  // coarse hats in V coordinates
        CMatrix small = jmap.adjoint() * completed.Atilde * jmap;
        GalerkinPair pair = make_galerkin_pair(completed.Atilde, small, jmap);
        CVector eta = CVector::Ones(completed.r);
        GalerkinSolution sol = galerkin_solution(pair, eta);
        CeaReport report =
            cea_error_bound(pair, eta, {default_candidate(pair, sol.u), sol.ucheck});
        nlohmann::json out = {{"exact_sq", report.exact_sq},
                              {"abs_bound", report.per_candidate[report.best].abs_bound},
                              {"re_bound", report.per_candidate[report.best].re_bound},
                              {"M", pair.big.M},
                              {"alpha", pair.big.alpha},
                              {"theta", pair.theta}};
        emit(opts, out.dump(2) + "\n");
        return kExitOk;
    }
    ExperimentSpec full = spec;
    full.kind = kind;
    FormSequenceProblem problem = build_experiment(full);
    bool hypothesis_ok = true;
    for (std::size_t n = 0; n < problem.members.size(); ++n)
        hypothesis_ok = hypothesis_ok && check_unif_est(problem, n).passes;
    ConvergenceReport report = resolvent_errors(
        problem, full.lambda, random_probes(problem.base.d(), probe_count, full.seed));
    std::ostringstream text;
    if (opts.json)
        text << convergence_to_json(report).dump(2) << '\n';
    else
        write_convergence_csv(text, report);
    emit(opts, text.str());
    if (!hypothesis_ok && !opts.quiet)
        std::cerr << "hypothesis violation: defect leaves the sector for some member\n";
    return hypothesis_ok ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasi-sectorial form toolkit"};
    app.require_subcommand(1);

    std::string spec_path;
    double theta = 0.0, gamma = 0.0, lambda = 1.0, t_max = 1.0;
    int t_points = 33, probe_count = 5;
    std::uint64_t seed = 1;
    std::string demo_kind;
    ExperimentSpec demo_spec;
    OutputOptions opts;

    auto* check = app.add_subcommand("check", "sector verification of a JSON form");
    check->add_option("--spec", spec_path)->required();
    check->add_option("--theta", theta);
    check->add_option("--gamma", gamma);
    add_output_flags(check, opts);

    auto* completec = app.add_subcommand("complete", "quotient completion of a form");
    completec->add_option("--spec", spec_path)->required();
    completec->add_option("--theta", theta);
    completec->add_option("--gamma", gamma);
    add_output_flags(completec, opts);

    auto* resolv = app.add_subcommand("resolvent", "(lambda + A)^-1 of a form");
    resolv->add_option("--spec", spec_path)->required();
    resolv->add_option("--theta", theta);
    resolv->add_option("--gamma", gamma);
    resolv->add_option("--lambda", lambda);
    add_output_flags(resolv, opts);

    auto* cea = app.add_subcommand("cea", "extended Cea bound for a Galerkin pair");
    cea->add_option("--spec", spec_path)->required();
    add_output_flags(cea, opts);

    auto* converge = app.add_subcommand("converge", "resolvent convergence report");
    converge->add_option("--spec", spec_path)->required();
    converge->add_option("--lambda", lambda);
    converge->add_option("--probes", probe_count);
    converge->add_option("--seed", seed);
    add_output_flags(converge, opts);

    auto* semigroupc = app.add_subcommand("semigroup", "semigroup convergence report");
    semigroupc->add_option("--spec", spec_path)->required();
    semigroupc->add_option("--t-max", t_max);
    semigroupc->add_option("--t-points", t_points);
    semigroupc->add_option("--probes", probe_count);
    semigroupc->add_option("--seed", seed);
    add_output_flags(semigroupc, opts);

    auto* demo = app.add_subcommand("demo", "canned experiments");
    demo->add_option("kind", demo_kind,
                     "galerkin-1d | dirichlet-1d | rotating-subspaces | absorption")
        ->required();
    demo->add_option("--d", demo_spec.d);
    demo->add_option("--k-max", demo_spec.big_n);
    demo->add_option("--N", demo_spec.big_n);
    demo->add_option("--lambda", demo_spec.lambda);
    demo->add_option("--theta", demo_spec.theta);
    demo->add_option("--theta0", demo_spec.theta0);
    demo->add_option("--seed", demo_spec.seed);
    demo->add_option("--probes", probe_count);
    add_output_flags(demo, opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check(spec_path, theta, gamma, opts);
        if (completec->parsed()) return run_complete(spec_path, theta, gamma, opts);
        if (resolv->parsed()) return run_resolvent(spec_path, theta, gamma, lambda, opts);
        if (cea->parsed()) return run_cea(spec_path, opts);
        if (converge->parsed())
            return run_converge(spec_path, lambda, probe_count, seed, opts);
        if (semigroupc->parsed())
            return run_semigroup(spec_path, t_max, t_points, probe_count, seed, opts);
        if (demo->parsed()) return run_demo(demo_kind, demo_spec, probe_count, opts);
    } catch (const SchemaError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitError;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
