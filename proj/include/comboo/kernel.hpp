#pragma once

#include <Eigen/Core>
#include <variant>
#include <vector>

namespace comboo {

using Point = Eigen::VectorXd;

/// k(x, x') = amplitude * exp(-||x - x'||^2 / lengthscale_sq)
struct RbfKernel {
    double amplitude = 1.0;
    double lengthscale_sq = 1.0;
};

/// Matern kernel with per-axis lengthscales, restricted to the closed-form
/// smoothness values nu in {1/2, 3/2, 5/2}.
struct MaternKernel {
    double nu = 2.5;
    Eigen::VectorXd lengthscales; // one per input axis, all > 0
    double amplitude = 1.0;
};

/// Tanimoto similarity kernel for nonnegative (binary fingerprint) inputs.
struct TanimotoKernel {
    double amplitude = 1.0;
};

using KernelSpec = std::variant<RbfKernel, MaternKernel, TanimotoKernel>;

/// Covariance between two points. Symmetric in its arguments.
/// Throws InputError on dimension mismatch or Tanimoto with two zero vectors.
double kernel_eval(const KernelSpec& spec, const Point& x1, const Point& x2);

/// k(x, x), i.e. the kernel amplitude.
double kernel_amplitude(const KernelSpec& spec);

/// Full covariance matrix of a point set (rows of X are points).
Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X);

/// Cross-covariances k(train_i, query_j); result is |train| x |query|.
Eigen::MatrixXd kernel_cross(const KernelSpec& spec, const Eigen::MatrixXd& train,
                             const Eigen::MatrixXd& query);

} // namespace comboo
