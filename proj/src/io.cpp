#include "qsf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace qsf {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number())
        throw SchemaError("missing or non-numeric field: " + field);
    return j[field].get<double>();
}

int require_int(const json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_number_integer())
        throw SchemaError("missing or non-integer field: " + field);
    return j[field].get<int>();
}

}  // namespace

nlohmann::json matrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out.push_back({m(i, j).real(), m(i, j).imag()});
    return out;
}

CMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols,
                         const std::string& field) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows * cols)
        throw SchemaError("field " + field + ": expected " + std::to_string(rows * cols) +
                          " complex entries");
    CMatrix m(rows, cols);
    Eigen::Index flat = 0;
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number())
            throw SchemaError("field " + field + ": complex entries must be [re, im]");
        m(flat / cols, flat % cols) = Complex(entry[0].get<double>(), entry[1].get<double>());
        ++flat;
    }
    return m;
}

nlohmann::json form_to_json(const FormInH& form) {
    return {{"m", form.m()},
            {"d", form.d()},
            {"F", matrix_to_json(form.F)},
            {"J", matrix_to_json(form.J)}};
}

FormInH form_from_json(const nlohmann::json& j) {
    const int m = require_int(j, "m");
    const int d = require_int(j, "d");
    if (m < 0 || d < 0) throw SchemaError("fields m, d must be non-negative");
    if (!j.contains("F")) throw SchemaError("missing field: F");
    if (!j.contains("J")) throw SchemaError("missing field: J");
    return FormInH(matrix_from_json(j["F"], m, m, "F"), matrix_from_json(j["J"], d, m, "J"));
}

nlohmann::json completed_to_json(const CompletedForm& completed) {
    return {{"r", completed.r},
            {"Q", matrix_to_json(completed.Q)},
            {"Qpinv", matrix_to_json(completed.Qpinv)},
            {"Atilde", matrix_to_json(completed.Atilde)},
            {"Jtilde", matrix_to_json(completed.Jtilde)},
            {"residual_form", completed.residual_form},
            {"residual_j", completed.residual_j}};
}

nlohmann::json problem_to_json(const FormSequenceProblem& problem) {
    json out = form_to_json(problem.base);
    out["theta"] = problem.sector.theta;
    out["gamma"] = problem.sector.gamma;
    json members = json::array();
    for (const FormSequenceMember& mem : problem.members)
        members.push_back({{"mn", mem.Fn.rows()},
                           {"Fn", matrix_to_json(mem.Fn)},
                           {"iota", matrix_to_json(mem.iota)}});
    out["members"] = members;
    if (problem.core_basis) out["core"] = matrix_to_json(*problem.core_basis);
    return out;
}

FormSequenceProblem problem_from_json(const nlohmann::json& j) {
    FormSequenceProblem problem;
    problem.base = form_from_json(j);
    problem.sector = Sector(require_number(j, "theta"), require_number(j, "gamma"));
    if (!j.contains("members") || !j["members"].is_array())
        throw SchemaError("missing or non-array field: members");
    const Eigen::Index m = problem.base.m();
    for (const auto& mem_json : j["members"]) {
        Eigen::Index mn;
        if (mem_json.contains("mn")) {
            mn = require_int(mem_json, "mn");
        } else {
            if (!mem_json.contains("Fn") || !mem_json["Fn"].is_array())
                throw SchemaError("member missing field: Fn");
            mn = static_cast<Eigen::Index>(std::llround(std::sqrt(
                static_cast<double>(mem_json["Fn"].size()))));
        }
        FormSequenceMember member;
        member.Fn = matrix_from_json(mem_json.at("Fn"), mn, mn, "Fn");
        member.iota = matrix_from_json(mem_json.at("iota"), m, mn, "iota");
        problem.members.push_back(std::move(member));
    }
    if (j.contains("core")) {
        const Eigen::Index cols = static_cast<Eigen::Index>(j["core"].size()) / std::max<Eigen::Index>(m, 1);
        problem.core_basis = matrix_from_json(j["core"], m, cols, "core");
    }
    problem.validate();
    return problem;
}

ExperimentSpec experiment_from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("missing or non-string field: kind");
    spec.kind = j["kind"].get<std::string>();
    if (j.contains("d")) spec.d = require_int(j, "d");
    if (j.contains("N")) spec.big_n = require_int(j, "N");
    if (j.contains("lambda")) spec.lambda = require_number(j, "lambda");
    if (j.contains("theta")) spec.theta = require_number(j, "theta");
    if (j.contains("gamma")) spec.gamma = require_number(j, "gamma");
    if (j.contains("theta0")) spec.theta0 = require_number(j, "theta0");
    if (j.contains("seed")) spec.seed = static_cast<std::uint64_t>(require_int(j, "seed"));
    return spec;
}

FormSequenceProblem build_experiment(const ExperimentSpec& spec) {
    if (spec.kind == "dirichlet-1d") {
        DirichletAssembly fine = assemble_dirichlet_1d(Mesh1D::uniform(1.0, spec.d));
        std::vector<Interval> schedule;
        for (int k = 2; k <= spec.big_n; k *= 2)
            schedule.push_back({1.0 / k, 1.0 - 1.0 / k});
        return dirichlet_subdomain_problem(fine, schedule);
    }
    if (spec.kind == "rotating-subspaces")
        return rotating_subspace_problem(spec.d, spec.big_n, spec.seed);
    if (spec.kind == "absorption") {
        DirichletAssembly fine = assemble_dirichlet_1d(Mesh1D::uniform(1.0, spec.d));
        std::vector<double> eps;
        for (int n = 1; n <= spec.big_n; ++n) eps.push_back(1.0 / n);
        return absorption_problem(fine, spec.theta, spec.theta0, eps);
    }
    throw SchemaError("unknown experiment kind: " + spec.kind);
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
    out << "n,sector_margin,defect_max,strong_err_max,op_norm_err,cea_lhs,cea_rhs\n";
    for (const ConvergenceRecord& rec : report.records)
        out << rec.n << ',' << format_double(rec.sector_margin) << ','
            << format_double(rec.defect_max) << ',' << format_double(rec.strong_err_max)
            << ',' << format_double(rec.op_norm_err) << ',' << format_double(rec.cea_lhs)
            << ',' << format_double(rec.cea_rhs) << '\n';
}

nlohmann::json convergence_to_json(const ConvergenceReport& report) {
    json records = json::array();
    for (const ConvergenceRecord& rec : report.records)
        records.push_back({{"n", rec.n},
                           {"sector_margin", rec.sector_margin},
                           {"defect_max", rec.defect_max},
                           {"strong_errors", rec.strong_errors},
                           {"strong_err_max", rec.strong_err_max},
                           {"op_norm_err", rec.op_norm_err},
                           {"cea_lhs", rec.cea_lhs},
                           {"cea_rhs", rec.cea_rhs}});
    return {{"lambda", report.lambda}, {"records", records}};
}

void write_semigroup_csv(std::ostream& out,
                         const std::vector<SemigroupConvergenceRecord>& records) {
    out << "n,probe_index,sup_err\n";
    for (const SemigroupConvergenceRecord& rec : records)
        for (std::size_t p = 0; p < rec.sup_errors.size(); ++p)
            out << rec.n << ',' << p << ',' << format_double(rec.sup_errors[p]) << '\n';
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw SchemaError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace qsf
