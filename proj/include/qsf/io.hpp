#pragma once

// JSON and CSV front door. Complex numbers are always two-element
// [re, im] arrays; matrices are flat row-major lists of those.

#include "qsf/experiments.hpp"

#include <json.hpp>

#include <iosfwd>

namespace qsf {

/// Thrown on malformed input files; the message names the failing field.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j, Eigen::Index rows, Eigen::Index cols,
                         const std::string& field);

nlohmann::json form_to_json(const FormInH& form);
FormInH form_from_json(const nlohmann::json& j);

nlohmann::json completed_to_json(const CompletedForm& completed);

nlohmann::json problem_to_json(const FormSequenceProblem& problem);
FormSequenceProblem problem_from_json(const nlohmann::json& j);

struct ExperimentSpec {
    std::string kind;      // galerkin-1d | dirichlet-1d | rotating-subspaces | absorption
    int d = 63;
    int big_n = 8;
    double lambda = 1.0;
    double theta = 0.0;
    double gamma = 0.0;
    double theta0 = 0.0;
    std::uint64_t seed = 1;
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);

/// Builds the sequence problem behind an experiment spec
/// (galerkin-1d is handled directly by the CLI, not here).
FormSequenceProblem build_experiment(const ExperimentSpec& spec);

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
nlohmann::json convergence_to_json(const ConvergenceReport& report);

void write_semigroup_csv(std::ostream& out,
                         const std::vector<SemigroupConvergenceRecord>& records);

/// Shortest round-trippable decimal (17 significant digits).
std::string format_double(double value);

nlohmann::json load_json_file(const std::string& path);

}  // namespace qsf
