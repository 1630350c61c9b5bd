#include "comboo/scalarize.hpp"

#include <cmath>

#include "comboo/errors.hpp"

namespace comboo {

namespace {
constexpr double kThetaFloor = 1e-9;
}

ThetaSample sample_theta(int m, Rng& rng) {
    if (m < 1) throw InputError("sample_theta: m must be >= 1");
    Eigen::VectorXd v(m);
    while (true) {
        for (int i = 0; i < m; ++i) v[i] = std::abs(rng.gaussian());
        double norm = v.norm();
        if (norm == 0.0) continue;
        v /= norm;
        if (v.minCoeff() >= kThetaFloor) return {v};
    }
}

double scalarize(const ThetaSample& theta, const ObjectiveVector& y) {
    const int m = static_cast<int>(theta.theta.size());
    if (y.size() != m) throw InputError("scalarize: dimension mismatch");
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        double ratio = std::max(0.0, y[i] / theta.theta[i]);
        worst = std::min(worst, ratio);
    }
    return std::pow(worst, m);
}

double cm_constant(int m) {
    if (m < 1) throw InputError("cm_constant: m must be >= 1");
    return std::pow(M_PI, m / 2.0) /
           (std::pow(2.0, m) * std::tgamma(m / 2.0 + 1.0));
}

} // namespace comboo
