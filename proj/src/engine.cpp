#include "comboo/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "comboo/errors.hpp"

namespace comboo {

double beta_value(const BetaSchedule& schedule, int t) {
    if (t < 1) throw InputError("beta_value: t must be >= 1");
    if (schedule.kind == BetaSchedule::Kind::Lemma1) {
        if (schedule.delta <= 0.0 || schedule.delta >= 1.0)
            throw InputError("beta_value: delta must be in (0,1)");
        double tt = static_cast<double>(t);
        return 2.0 * std::log((schedule.m + schedule.c) * schedule.domain_size *
                              M_PI * M_PI * tt * tt / (6.0 * schedule.delta));
    }
    return schedule.coef * std::log(2.0 * (1.0 + t));
}

namespace {

KernelSpec scale_lengthscales(const KernelSpec& spec, double factor) {
    KernelSpec out = spec;
    std::visit(
        [&](auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RbfKernel>)
                k.lengthscale_sq *= factor * factor;
            else if constexpr (std::is_same_v<T, MaternKernel>)
                k.lengthscales *= factor;
        },
        out);
    return out;
}

PosteriorModel fit_one(const KernelSpec& spec, double noise_var,
                       const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const std::vector<double>& lengthscale_grid) {
    if (lengthscale_grid.empty()) return fit_posterior(spec, noise_var, X, y);
    std::vector<KernelSpec> candidates;
    for (double f : lengthscale_grid) candidates.push_back(scale_lengthscales(spec, f));
    return fit_posterior_grid(candidates, noise_var, X, y);
}

// Round-t snapping lattice for the discretized-continuous mode. Identity for
// discrete domains.
Eigen::MatrixXd snap_to_round_lattice(const Eigen::MatrixXd& pts,
                                      const ProblemSpec& problem,
                                      const RunConfig& config, int t) {
    if (problem.is_discrete()) return pts;
    const int d = problem.d;
    double tau = config.c_tau * d * static_cast<double>(t) * t;
    int res = static_cast<int>(std::ceil(std::pow(tau, 1.0 / d)));
    res = std::clamp(res, 2, config.grid_cap);

    Eigen::MatrixXd snapped = pts;
    for (int a = 0; a < d; ++a) {
        double lo = problem.lower[a];
        double span = problem.upper[a] - lo;
        double step = span / (res - 1);
        for (Eigen::Index i = 0; i < pts.rows(); ++i) {
            double u = (pts(i, a) - lo) / step;
            // ties snap to the lower index
            double idx = std::clamp(std::ceil(u - 0.5), 0.0, double(res - 1));
            snapped(i, a) = lo + idx * step;
        }
    }
    return snapped;
}

// UCBs of a model family over candidate rows; one column per function.
Eigen::MatrixXd ucb_matrix(const std::vector<PosteriorModel>& models,
                           const Eigen::MatrixXd& pts, double beta, double slack) {
    Eigen::MatrixXd U(pts.rows(), static_cast<Eigen::Index>(models.size()));
    const double sqrt_beta = std::sqrt(beta);
    for (std::size_t j = 0; j < models.size(); ++j) {
        auto [mean, var] = models[j].mean_var_batch(pts);
        U.col(static_cast<Eigen::Index>(j)) =
            mean.array() + sqrt_beta * var.array().sqrt() + slack;
    }
    return U;
}

} // namespace

FeasibleSetResult optimistic_feasible_set(const std::vector<PosteriorModel>& models_g,
                                          const CandidateSet& candidates,
                                          double beta) {
    FeasibleSetResult result;
    const Eigen::Index n = candidates.points.rows();
    if (models_g.empty()) {
        result.indices.resize(n);
        std::iota(result.indices.begin(), result.indices.end(), Eigen::Index{0});
        result.max_min_ucb = std::numeric_limits<double>::infinity();
        return result;
    }
    Eigen::MatrixXd U = ucb_matrix(models_g, candidates.points, beta, 0.0);
    Eigen::VectorXd min_ucb = U.rowwise().minCoeff();
    result.max_min_ucb = min_ucb.maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i)
        if (min_ucb[i] >= 0.0) result.indices.push_back(i);
    return result;
}

double acquisition_value(const std::vector<PosteriorModel>& models_f,
                         const Eigen::VectorXd& x, const ThetaSample& theta,
                         const ReferencePoint& z, double beta) {
    Eigen::VectorXd u(models_f.size());
    for (std::size_t i = 0; i < models_f.size(); ++i) {
        auto [mean, var] = models_f[i].mean_var(x);
        u[static_cast<Eigen::Index>(i)] =
            mean + std::sqrt(beta) * std::sqrt(var) - z.z[static_cast<Eigen::Index>(i)];
    }
    return scalarize(theta, u);
}

namespace {

Eigen::Index argmax_scalarized(const Eigen::MatrixXd& U_minus_z,
                               const std::vector<Eigen::Index>& feasible,
                               const ThetaSample& theta) {
    const int m = static_cast<int>(theta.theta.size());
    Eigen::Index best = feasible.front();
    double best_val = -1.0;
    for (std::size_t k = 0; k < feasible.size(); ++k) {
        Eigen::Index i = feasible[k];
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j)
            worst = std::min(worst, std::max(0.0, U_minus_z(i, j) / theta.theta[j]));
        double val = std::pow(worst, m);
        if (val > best_val) {
            best_val = val;
            best = i;
        }
    }
    return best;
}

} // namespace

Eigen::Index select_candidate(const std::vector<PosteriorModel>& models_f,
                              const CandidateSet& candidates,
                              const std::vector<Eigen::Index>& feasible,
                              const ThetaSample& theta, const ReferencePoint& z,
                              double beta) {
    if (feasible.empty())
        throw InputError("select_candidate: feasible set is empty; the caller "
                         "must check infeasibility first");
    Eigen::MatrixXd U = ucb_matrix(models_f, candidates.points, beta, 0.0);
    U.rowwise() -= z.z.transpose();
    return argmax_scalarized(U, feasible, theta);
}

TrajectoryRecord comboo_step(RunState& state, const ProblemSpec& problem,
                             const CandidateSet& candidates, const RunConfig& config,
                             Rng& rng) {
    if (state.declared_infeasible)
        throw InputError("comboo_step: run already declared infeasible");

    const int t = state.t + 1;
    const double beta = beta_value(config.beta, t);
    const bool modified = config.mode == SearchMode::DiscretizedContinuous;
    const double slack = modified ? 1.0 / (static_cast<double>(t) * t) : 0.0;
    Eigen::MatrixXd eval_pts =
        modified ? snap_to_round_lattice(candidates.points, problem, config, t)
                 : candidates.points;

    TrajectoryRecord rec;
    rec.beta = beta;

    // optimistic feasible region and the auxiliary declaration problem
    FeasibleSetResult feas;
    if (problem.c == 0) {
        feas.indices.resize(candidates.points.rows());
        std::iota(feas.indices.begin(), feas.indices.end(), Eigen::Index{0});
        feas.max_min_ucb = std::numeric_limits<double>::infinity();
    } else {
        Eigen::MatrixXd Ug = ucb_matrix(state.models_g, eval_pts, beta, slack);
        Eigen::VectorXd min_ucb = Ug.rowwise().minCoeff();
        feas.max_min_ucb = min_ucb.maxCoeff();
        for (Eigen::Index i = 0; i < min_ucb.size(); ++i)
            if (min_ucb[i] >= 0.0) feas.indices.push_back(i);
    }
    rec.max_min_ucb = feas.max_min_ucb;
    rec.feasible_set_size = static_cast<int>(feas.indices.size());

    if (feas.indices.empty()) {
        rec.declared = true;
        if (!(config.continue_after_declaration && problem.known_feasible)) {
            state.declared_infeasible = true;
            return rec;
        }
        // known-feasible problem: keep the posterior and search the whole domain
        feas.indices.resize(candidates.points.rows());
        std::iota(feas.indices.begin(), feas.indices.end(), Eigen::Index{0});
    }

    ThetaSample theta = sample_theta(problem.m, rng);
    rec.theta = theta.theta;

    Eigen::MatrixXd Uf = ucb_matrix(state.models_f, eval_pts, beta, slack);
    Uf.rowwise() -= config.z.z.transpose();
    Eigen::Index pick = argmax_scalarized(Uf, feas.indices, theta);

    Observation obs = observe(problem, candidates.points.row(pick), rng);
    Evaluation truth = evaluate(problem, obs.x);

    const Eigen::Index n_old = state.history_x.rows();
    state.history_x.conservativeResize(n_old + 1, Eigen::NoChange);
    state.history_y_f.conservativeResize(n_old + 1, Eigen::NoChange);
    state.history_y_g.conservativeResize(n_old + 1, Eigen::NoChange);
    state.history_x.row(n_old) = obs.x;
    state.history_y_f.row(n_old) = obs.y_f;
    if (problem.c > 0) state.history_y_g.row(n_old) = obs.y_g;

    for (int i = 0; i < problem.m; ++i)
        state.models_f[i] =
            fit_one(config.kernels_f[i], problem.noise_sd_f[i] * problem.noise_sd_f[i],
                    state.history_x, state.history_y_f.col(i), config.lengthscale_grid);
    for (int j = 0; j < problem.c; ++j)
        state.models_g[j] =
            fit_one(config.kernels_g[j], problem.noise_sd_g[j] * problem.noise_sd_g[j],
                    state.history_x, state.history_y_g.col(j), config.lengthscale_grid);

    state.t = t;

    rec.x = obs.x;
    rec.f_true = truth.f;
    rec.g_true = truth.g;
    rec.y_f = obs.y_f;
    rec.y_g = obs.y_g;
    rec.feasible_true = problem.c == 0 || truth.g.minCoeff() >= 0.0;
    return rec;
}

namespace {

void validate_run_config(const ProblemSpec& problem, const RunConfig& config) {
    if (config.T < 0) throw ConfigError("run: T must be >= 0");
    if (config.n_init < 0) throw ConfigError("run: n_init must be >= 0");
    if (static_cast<int>(config.kernels_f.size()) != problem.m)
        throw ConfigError("run: need one objective kernel per objective");
    if (static_cast<int>(config.kernels_g.size()) != problem.c)
        throw ConfigError("run: need one constraint kernel per constraint");
    if (config.z.z.size() != problem.m)
        throw ConfigError("run: reference point dimension must equal m");
    if (config.beta.kind == BetaSchedule::Kind::Lemma1 &&
        (config.beta.delta <= 0.0 || config.beta.delta >= 1.0))
        throw ConfigError("run: delta must be in (0,1)");
}

} // namespace

std::vector<TrajectoryRecord> run(const ProblemSpec& problem,
                                  const CandidateSet& candidates,
                                  const RunConfig& config, Rng& rng) {
    validate_run_config(problem, config);
    const Eigen::Index n_cand = candidates.points.rows();
    if (n_cand == 0) throw ConfigError("run: empty candidate set");

    // initialization pool: the whole domain, or only truly feasible points
    std::vector<Eigen::Index> pool(n_cand);
    std::iota(pool.begin(), pool.end(), Eigen::Index{0});
    if (config.require_feasible_init && problem.c > 0) {
        std::vector<Eigen::Index> feasible;
        for (Eigen::Index i = 0; i < n_cand; ++i) {
            Evaluation e = evaluate(problem, candidates.points.row(i));
            if (e.g.minCoeff() >= 0.0) feasible.push_back(i);
        }
        if (feasible.empty())
            throw ConfigError("run: require_feasible_init set but no feasible "
                              "candidate exists");
        pool = std::move(feasible);
    }
    if (config.n_init > static_cast<int>(pool.size()))
        throw ConfigError("run: n_init exceeds the initialization pool size");

    RunState state;
    state.history_x.resize(0, problem.d);
    state.history_y_f.resize(0, problem.m);
    state.history_y_g.resize(0, std::max(problem.c, 0));

    std::vector<TrajectoryRecord> records;

    // partial Fisher-Yates draw without replacement
    for (int k = 0; k < config.n_init; ++k) {
        std::size_t r = k + rng.index(pool.size() - k);
        std::swap(pool[k], pool[r]);
        Eigen::Index pick = pool[k];

        Observation obs = observe(problem, candidates.points.row(pick), rng);
        Evaluation truth = evaluate(problem, obs.x);

        const Eigen::Index n_old = state.history_x.rows();
        state.history_x.conservativeResize(n_old + 1, Eigen::NoChange);
        state.history_y_f.conservativeResize(n_old + 1, Eigen::NoChange);
        state.history_y_g.conservativeResize(n_old + 1, Eigen::NoChange);
        state.history_x.row(n_old) = obs.x;
        state.history_y_f.row(n_old) = obs.y_f;
        if (problem.c > 0) state.history_y_g.row(n_old) = obs.y_g;

        TrajectoryRecord rec;
        rec.t = static_cast<int>(records.size()) + 1;
        rec.is_init = true;
        rec.x = obs.x;
        rec.f_true = truth.f;
        rec.g_true = truth.g;
        rec.y_f = obs.y_f;
        rec.y_g = obs.y_g;
        rec.feasible_true = problem.c == 0 || truth.g.minCoeff() >= 0.0;
        rec.feasible_set_size = static_cast<int>(n_cand);
        records.push_back(std::move(rec));
    }

    for (int i = 0; i < problem.m; ++i)
        state.models_f.push_back(
            fit_one(config.kernels_f[i], problem.noise_sd_f[i] * problem.noise_sd_f[i],
                    state.history_x, state.history_y_f.col(i), config.lengthscale_grid));
    for (int j = 0; j < problem.c; ++j)
        state.models_g.push_back(
            fit_one(config.kernels_g[j], problem.noise_sd_g[j] * problem.noise_sd_g[j],
                    state.history_x, state.history_y_g.col(j), config.lengthscale_grid));

    for (int round = 0; round < config.T; ++round) {
        TrajectoryRecord rec = comboo_step(state, problem, candidates, config, rng);
        rec.t = static_cast<int>(records.size()) + 1;
        records.push_back(std::move(rec));
        if (state.declared_infeasible) break;
    }
    return records;
}

} // namespace comboo
