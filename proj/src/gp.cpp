#include "comboo/gp.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <limits>

#include "comboo/errors.hpp"

namespace comboo {

PosteriorModel::PosteriorModel(KernelSpec kernel, double noise_var)
    : kernel_(std::move(kernel)), noise_var_(noise_var) {
    if (noise_var < 0.0) throw InputError("noise_var must be >= 0");
}

PosteriorModel fit_posterior(const KernelSpec& spec, double noise_var,
                             const Eigen::MatrixXd& train_x,
                             const Eigen::VectorXd& train_y) {
    if (train_x.rows() != train_y.size())
        throw InputError("fit_posterior: |train_x| != |train_y|");

    PosteriorModel model(spec, noise_var);
    if (train_x.rows() == 0) return model;

    const double amp = kernel_amplitude(spec);
    Eigen::MatrixXd K = kernel_matrix(spec, train_x);

    for (double jitter = 1e-8 * amp; jitter <= 1e-4 * amp * 1.0000001;
         jitter *= 10.0) {
        Eigen::MatrixXd A = K;
        A.diagonal().array() += noise_var + jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() == Eigen::Success) {
            model.train_x_ = train_x;
            model.train_y_ = train_y;
            model.factor_ = llt.matrixL();
            model.weights_ = llt.solve(train_y);
            model.jitter_ = jitter;
            return model;
        }
    }
    throw NumericalError(
        "fit_posterior: kernel matrix not positive definite after jitter "
        "escalation to 1e-4 * amplitude (" +
        std::to_string(train_x.rows()) + " points, likely duplicated inputs "
        "with near-zero noise)");
}

std::pair<double, double> PosteriorModel::mean_var(const Point& x) const {
    Eigen::MatrixXd X(1, x.size());
    X.row(0) = x;
    auto [m, v] = mean_var_batch(X);
    return {m[0], v[0]};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> PosteriorModel::mean_var_batch(
    const Eigen::MatrixXd& X) const {
    const Eigen::Index n = X.rows();
    if (num_points() == 0) {
        Eigen::VectorXd mean = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd var(n);
        for (Eigen::Index i = 0; i < n; ++i)
            var[i] = kernel_eval(kernel_, X.row(i), X.row(i));
        return {mean, var};
    }
    if (X.cols() != train_x_.cols())
        throw InputError("mean_var: query dimension mismatch");

    Eigen::MatrixXd Kxs = kernel_cross(kernel_, train_x_, X); // t x n
    Eigen::VectorXd mean = Kxs.transpose() * weights_;
    Eigen::MatrixXd V =
        factor_.triangularView<Eigen::Lower>().solve(Kxs); // t x n
    Eigen::VectorXd var(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double prior = kernel_eval(kernel_, X.row(i), X.row(i));
        var[i] = std::min(prior, std::max(0.0, prior - V.col(i).squaredNorm()));
    }
    return {mean, var};
}

ConfidenceBound confidence_bounds(const PosteriorModel& model, const Point& x,
                                  double beta) {
    if (beta < 0.0) throw InputError("confidence_bounds: beta must be >= 0");
    auto [mean, var] = model.mean_var(x);
    double w = std::sqrt(beta) * std::sqrt(var);
    return {mean - w, mean + w};
}

ConfidenceBound modified_confidence_bounds(const PosteriorModel& model,
                                           const Point& x, double beta, int t,
                                           const DiscretizationGrid& grid) {
    if (grid.points.rows() == 0)
        throw InputError("modified_confidence_bounds: empty grid");
    if (t < 1) throw InputError("modified_confidence_bounds: t must be >= 1");
    if (beta < 0.0) throw InputError("modified_confidence_bounds: beta must be >= 0");

    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
        double d = (grid.points.row(i).transpose() - x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    auto [mean, var] = model.mean_var(grid.points.row(best));
    double w = std::sqrt(beta) * std::sqrt(var);
    double slack = 1.0 / (static_cast<double>(t) * t);
    return {mean - w - slack, mean + w + slack};
}

double log_marginal_likelihood(const PosteriorModel& model) {
    const Eigen::Index t = model.num_points();
    if (t == 0) throw InputError("log_marginal_likelihood: empty model");
    double quad = model.train_y().dot(model.weights());
    double logdet_half = model.factor().diagonal().array().log().sum();
    return -0.5 * quad - logdet_half - 0.5 * t * std::log(2.0 * M_PI);
}

double information_gain(const KernelSpec& spec, double noise_var,
                        const Eigen::MatrixXd& X) {
    if (noise_var <= 0.0) throw InputError("information_gain: noise_var must be > 0");
    if (X.rows() == 0) return 0.0;
    Eigen::MatrixXd A = kernel_matrix(spec, X) / noise_var;
    A.diagonal().array() += 1.0;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw NumericalError("information_gain: factorization failed");
    return Eigen::MatrixXd(llt.matrixL()).diagonal().array().log().sum();
}

PosteriorModel fit_posterior_grid(const std::vector<KernelSpec>& candidates,
                                  double noise_var, const Eigen::MatrixXd& train_x,
                                  const Eigen::VectorXd& train_y) {
    if (candidates.empty()) throw InputError("fit_posterior_grid: no candidates");
    bool have_best = false;
    double best_lml = 0.0;
    PosteriorModel best(candidates.front(), noise_var);
    for (const auto& spec : candidates) {
        PosteriorModel m = fit_posterior(spec, noise_var, train_x, train_y);
        double lml = m.num_points() > 0 ? log_marginal_likelihood(m) : 0.0;
        if (!have_best || lml > best_lml) {
            have_best = true;
            best_lml = lml;
            best = std::move(m);
        }
    }
    return best;
}

} // namespace comboo
