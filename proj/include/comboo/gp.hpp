#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "comboo/kernel.hpp"

namespace comboo {

struct ConfidenceBound {
    double lcb = 0.0;
    double ucb = 0.0;
};

/// Explicit discretization used by the modified (continuous-mode) bounds.
/// Rows are grid points.
struct DiscretizationGrid {
    Eigen::MatrixXd points;
};

/// Exact GP posterior, fitted once and immutable afterwards. Queries are pure
/// and safe from concurrent readers.
class PosteriorModel {
public:
    /// Prior model (no observations).
    explicit PosteriorModel(KernelSpec kernel, double noise_var);

    const KernelSpec& kernel() const { return kernel_; }
    double noise_var() const { return noise_var_; }
    Eigen::Index num_points() const { return train_x_.rows(); }
    const Eigen::MatrixXd& train_x() const { return train_x_; }
    const Eigen::VectorXd& train_y() const { return train_y_; }
    /// Lower-triangular factor of K + (noise_var + jitter) I. Empty if no data.
    const Eigen::MatrixXd& factor() const { return factor_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    double jitter() const { return jitter_; }

    std::pair<double, double> mean_var(const Point& x) const;

    /// Batched mean/variance over rows of X. Variances clamped to [0, k(x,x)].
    std::pair<Eigen::VectorXd, Eigen::VectorXd> mean_var_batch(
        const Eigen::MatrixXd& X) const;

    friend PosteriorModel fit_posterior(const KernelSpec&, double,
                                        const Eigen::MatrixXd&,
                                        const Eigen::VectorXd&);

private:
    KernelSpec kernel_;
    double noise_var_ = 0.0;
    Eigen::MatrixXd train_x_;
    Eigen::VectorXd train_y_;
    Eigen::MatrixXd factor_;
    Eigen::VectorXd weights_;
    double jitter_ = 0.0;
};

/// Fit the exact GP posterior. Jitter starts at 1e-8 * amplitude and escalates
/// x10 up to 1e-4 * amplitude before giving up with NumericalError.
PosteriorModel fit_posterior(const KernelSpec& spec, double noise_var,
                             const Eigen::MatrixXd& train_x,
                             const Eigen::VectorXd& train_y);

/// mean +- sqrt(beta) * sd
ConfidenceBound confidence_bounds(const PosteriorModel& model, const Point& x,
                                  double beta);

/// Bounds evaluated at the nearest grid point, widened by the 1/t^2 slack.
/// Nearest-point ties break to the lowest grid index.
ConfidenceBound modified_confidence_bounds(const PosteriorModel& model,
                                           const Point& x, double beta, int t,
                                           const DiscretizationGrid& grid);

/// -1/2 y^T alpha - sum(log diag(L)) - (t/2) log(2 pi). Requires >= 1 point.
double log_marginal_likelihood(const PosteriorModel& model);

/// 1/2 log det(I + K / noise_var) for the given point set (rows of X).
double information_gain(const KernelSpec& spec, double noise_var,
                        const Eigen::MatrixXd& X);

/// Refit choosing the candidate spec with the highest log marginal likelihood
/// (ties to the lowest index). Used for per-round hyperparameter grid search.
PosteriorModel fit_posterior_grid(const std::vector<KernelSpec>& candidates,
                                  double noise_var, const Eigen::MatrixXd& train_x,
                                  const Eigen::VectorXd& train_y);

} // namespace comboo
