#pragma once

#include <optional>
#include <vector>

#include "comboo/gp.hpp"
#include "comboo/problems.hpp"
#include "comboo/scalarize.hpp"
#include "comboo/trajectory.hpp"

namespace comboo {

struct BetaSchedule {
    enum class Kind { Lemma1, Experimental };
    Kind kind = Kind::Experimental;
    double delta = 0.1;       // lemma1 only, must lie in (0, 1)
    double domain_size = 1.0; // |X|, lemma1 only
    double coef = 0.4;        // experimental only
    int m = 1;
    int c = 0;
};

/// lemma1: 2 log((m+c) |X| pi^2 t^2 / (6 delta));  experimental: coef log(2(1+t))
double beta_value(const BetaSchedule& schedule, int t);

enum class SearchMode { Discrete, DiscretizedContinuous };

/// Engine-level knobs; the CLI layer resolves these from JSON + problem defaults.
struct RunConfig {
    int T = 60;
    int n_init = 10;
    BetaSchedule beta;
    ReferencePoint z;
    SearchMode mode = SearchMode::Discrete;
    bool require_feasible_init = false;
    bool continue_after_declaration = false;
    std::vector<KernelSpec> kernels_f; // one per objective
    std::vector<KernelSpec> kernels_g; // one per constraint
    // Discretized-continuous mode: round-t lattice resolution per axis is
    // min(grid_cap, ceil(tau_t^(1/d))) with tau_t = c_tau * d * t^2.
    int grid_cap = 64;
    double c_tau = 1.0;
    // Optional per-round hyperparameter grid search over lengthscale values.
    std::vector<double> lengthscale_grid;
};

struct RunState {
    int t = 0; // completed optimization rounds (init not counted)
    Eigen::MatrixXd history_x;
    Eigen::MatrixXd history_y_f;
    Eigen::MatrixXd history_y_g;
    std::vector<PosteriorModel> models_f;
    std::vector<PosteriorModel> models_g;
    bool declared_infeasible = false;
};

struct FeasibleSetResult {
    std::vector<Eigen::Index> indices; // into the candidate set
    double max_min_ucb = 0.0;
};

/// Candidates whose every constraint UCB is >= 0, plus the auxiliary value
/// max_x min_j ucb_j(x). With c = 0 everything is feasible and the value +inf.
FeasibleSetResult optimistic_feasible_set(const std::vector<PosteriorModel>& models_g,
                                          const CandidateSet& candidates, double beta);

/// s_theta(ucb_f(x) - z), the scalarized optimistic hypervolume gain.
double acquisition_value(const std::vector<PosteriorModel>& models_f,
                         const Eigen::VectorXd& x, const ThetaSample& theta,
                         const ReferencePoint& z, double beta);

/// Exhaustive argmax of acquisition_value over the feasible subset.
/// Ties break to the lowest candidate index. Feasible set must be nonempty.
Eigen::Index select_candidate(const std::vector<PosteriorModel>& models_f,
                              const CandidateSet& candidates,
                              const std::vector<Eigen::Index>& feasible,
                              const ThetaSample& theta, const ReferencePoint& z,
                              double beta);

/// One optimization round. Returns nullopt together with the declaration
/// record when infeasibility is declared without querying.
TrajectoryRecord comboo_step(RunState& state, const ProblemSpec& problem,
                             const CandidateSet& candidates, const RunConfig& config,
                             Rng& rng);

/// Full run: n_init uniform initial queries, then up to T rounds.
std::vector<TrajectoryRecord> run(const ProblemSpec& problem,
                                  const CandidateSet& candidates,
                                  const RunConfig& config, Rng& rng);

} // namespace comboo
