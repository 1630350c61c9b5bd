#include "comboo/kernel.hpp"

#include <cmath>

#include "comboo/errors.hpp"

namespace comboo {

namespace {

void check_dims(const Point& x1, const Point& x2) {
    if (x1.size() != x2.size())
        throw InputError("kernel_eval: dimension mismatch (" +
                         std::to_string(x1.size()) + " vs " +
                         std::to_string(x2.size()) + ")");
}

double matern_scaled_dist(const MaternKernel& k, const Point& x1, const Point& x2) {
    if (k.lengthscales.size() != x1.size())
        throw InputError("Matern kernel: lengthscale vector has dimension " +
                         std::to_string(k.lengthscales.size()) + ", inputs have " +
                         std::to_string(x1.size()));
    double s = 0.0;
    for (Eigen::Index i = 0; i < x1.size(); ++i) {
        double d = (x1[i] - x2[i]) / k.lengthscales[i];
        s += d * d;
    }
    return std::sqrt(s);
}

} // namespace

double kernel_eval(const KernelSpec& spec, const Point& x1, const Point& x2) {
    check_dims(x1, x2);
    return std::visit(
        [&](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RbfKernel>) {
                return k.amplitude *
                       std::exp(-(x1 - x2).squaredNorm() / k.lengthscale_sq);
            } else if constexpr (std::is_same_v<T, MaternKernel>) {
                double r = matern_scaled_dist(k, x1, x2);
                if (k.nu == 0.5) return k.amplitude * std::exp(-r);
                if (k.nu == 1.5) {
                    double s = std::sqrt(3.0) * r;
                    return k.amplitude * (1.0 + s) * std::exp(-s);
                }
                if (k.nu == 2.5) {
                    double s = std::sqrt(5.0) * r;
                    return k.amplitude * (1.0 + s + 5.0 * r * r / 3.0) * std::exp(-s);
                }
                throw InputError("Matern kernel: nu must be one of 1/2, 3/2, 5/2");
            } else {
                double dot = x1.dot(x2);
                double denom = x1.squaredNorm() + x2.squaredNorm() - dot;
                if (denom == 0.0)
                    throw InputError("Tanimoto kernel: both inputs are all-zero");
                return k.amplitude * dot / denom;
            }
        },
        spec);
}

double kernel_amplitude(const KernelSpec& spec) {
    return std::visit([](const auto& k) { return k.amplitude; }, spec);
}

namespace {

// ||a_i - b_j||^2 for all pairs, rows of A and B being points.
Eigen::MatrixXd pairwise_sq_dists(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    Eigen::VectorXd a2 = A.rowwise().squaredNorm();
    Eigen::VectorXd b2 = B.rowwise().squaredNorm();
    Eigen::MatrixXd D = -2.0 * (A * B.transpose());
    D.colwise() += a2;
    D.rowwise() += b2.transpose();
    return D.cwiseMax(0.0);
}

Eigen::MatrixXd cross_impl(const KernelSpec& spec, const Eigen::MatrixXd& A,
                           const Eigen::MatrixXd& B) {
    if (A.cols() != B.cols())
        throw InputError("kernel: point sets have mismatched dimensions");
    return std::visit(
        [&](const auto& k) -> Eigen::MatrixXd {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RbfKernel>) {
                return (pairwise_sq_dists(A, B) * (-1.0 / k.lengthscale_sq))
                           .array()
                           .exp() *
                       k.amplitude;
            } else if constexpr (std::is_same_v<T, MaternKernel>) {
                if (k.lengthscales.size() != A.cols())
                    throw InputError("Matern kernel: lengthscale dimension mismatch");
                Eigen::VectorXd inv = k.lengthscales.cwiseInverse();
                Eigen::MatrixXd As = A * inv.asDiagonal();
                Eigen::MatrixXd Bs = B * inv.asDiagonal();
                Eigen::ArrayXXd r = pairwise_sq_dists(As, Bs).array().sqrt();
                if (k.nu == 0.5) return (k.amplitude * (-r).exp()).matrix();
                if (k.nu == 1.5) {
                    Eigen::ArrayXXd s = std::sqrt(3.0) * r;
                    return (k.amplitude * (1.0 + s) * (-s).exp()).matrix();
                }
                if (k.nu == 2.5) {
                    Eigen::ArrayXXd s = std::sqrt(5.0) * r;
                    return (k.amplitude * (1.0 + s + 5.0 / 3.0 * r.square()) *
                            (-s).exp())
                        .matrix();
                }
                throw InputError("Matern kernel: nu must be one of 1/2, 3/2, 5/2");
            } else {
                Eigen::MatrixXd dot = A * B.transpose();
                Eigen::VectorXd a2 = A.rowwise().squaredNorm();
                Eigen::VectorXd b2 = B.rowwise().squaredNorm();
                Eigen::MatrixXd denom = -dot;
                denom.colwise() += a2;
                denom.rowwise() += b2.transpose();
                for (Eigen::Index i = 0; i < denom.rows(); ++i)
                    for (Eigen::Index j = 0; j < denom.cols(); ++j)
                        if (denom(i, j) == 0.0)
                            throw InputError(
                                "Tanimoto kernel: both inputs are all-zero");
                return k.amplitude * dot.cwiseQuotient(denom);
            }
        },
        spec);
}

} // namespace

Eigen::MatrixXd kernel_matrix(const KernelSpec& spec, const Eigen::MatrixXd& X) {
    Eigen::MatrixXd K = cross_impl(spec, X, X);
    // exact symmetry and unit diagonal regardless of rounding in the gemm path
    K = ((K + K.transpose()) / 2.0).eval();
    K.diagonal().setConstant(kernel_amplitude(spec));
    return K;
}

Eigen::MatrixXd kernel_cross(const KernelSpec& spec, const Eigen::MatrixXd& train,
                             const Eigen::MatrixXd& query) {
    return cross_impl(spec, train, query);
}

} // namespace comboo
