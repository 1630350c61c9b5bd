#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "comboo/kernel.hpp"
#include "comboo/pareto.hpp"
#include "comboo/rng.hpp"

namespace comboo {

/// A noiseless evaluation of every objective and constraint.
struct Evaluation {
    Eigen::VectorXd f; // m objective values (maximization)
    Eigen::VectorXd g; // c constraint values; >= 0 is feasible
};

/// One noisy query.
struct Observation {
    Eigen::VectorXd x;
    Eigen::VectorXd y_f;
    Eigen::VectorXd y_g;
};

struct ProblemSpec {
    std::string name;
    int d = 0;
    int m = 0;
    int c = 0;
    Eigen::VectorXd lower;         // per-axis bounds (box problems)
    Eigen::VectorXd upper;
    Eigen::MatrixXd discrete_candidates; // nonempty rows => explicit domain
    Eigen::VectorXd noise_sd_f;
    Eigen::VectorXd noise_sd_g;
    bool known_feasible = true;
    Eigen::VectorXd default_z;
    // Per-function kernel defaults, sized to the problem's value scales.
    std::vector<KernelSpec> default_kernels_f;
    std::vector<KernelSpec> default_kernels_g;
    double default_beta_coef = 0.4;
    int default_resolution = 101;
    bool default_require_feasible_init = false;
    std::function<Evaluation(const Eigen::VectorXd&)> evaluator;

    bool is_discrete() const { return discrete_candidates.rows() > 0; }
};

struct CandidateSet {
    Eigen::MatrixXd points; // rows are candidates
};

struct TrueFrontResult {
    double hv_star = 0.0;
    std::vector<ObjectiveVector> front;
    bool any_feasible = false;
};

/// Noiseless ground truth. Throws InputError if x is out of bounds.
Evaluation evaluate(const ProblemSpec& problem, const Eigen::VectorXd& x);

/// evaluate() plus independent Gaussian noise per function component
/// (objectives first, then constraints, in index order).
Observation observe(const ProblemSpec& problem, const Eigen::VectorXd& x, Rng& rng);

/// Uniform lattice over the box including both endpoints per axis. Discrete
/// problems return their explicit list regardless of resolution.
CandidateSet candidate_grid(const ProblemSpec& problem,
                            const std::vector<int>& resolution,
                            std::size_t size_cap = 1000000);

/// Ground-truth Pareto front and hypervolume on the candidate grid: the
/// desk-scale surrogate for HV_z(P).
TrueFrontResult true_pareto_hv(const ProblemSpec& problem, const ReferencePoint& z,
                               const std::vector<int>& resolution,
                               std::size_t size_cap = 1000000);

/// Registered fixtures: toy, branin_currin, c2_dtlz2, tanimoto_synth,
/// infeasible_toy. Throws ConfigError for unknown names.
ProblemSpec make_problem(const std::string& name);
std::vector<std::string> problem_registry();

/// Parameterized constructors (the registry uses the paper-scale defaults).
ProblemSpec make_toy();
ProblemSpec make_branin_currin();
ProblemSpec make_c2_dtlz2(int d);
ProblemSpec make_tanimoto_synth();
ProblemSpec make_infeasible_toy();

/// Discrete problem from a CSV table with header x_0..x_{d-1},f_0..,g_0..
ProblemSpec load_table_problem(const std::string& path);

} // namespace comboo
