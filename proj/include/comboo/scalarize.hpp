#pragma once

#include <Eigen/Core>

#include "comboo/rng.hpp"

namespace comboo {

using ObjectiveVector = Eigen::VectorXd;

/// Direction on the positive orthant of the unit sphere. Every component is
/// strictly positive (>= 1e-9) and the norm is 1.
struct ThetaSample {
    Eigen::VectorXd theta;
};

/// Sub-optimal anchor below which hypervolume is measured.
struct ReferencePoint {
    Eigen::VectorXd z;
};

/// Uniform draw from the positive orthant of the unit sphere:
/// normalized absolute values of independent standard normals, resampled while
/// any component falls below 1e-9.
ThetaSample sample_theta(int m, Rng& rng);

/// min_i ([y_i / theta_i]^+)^m. Nonnegative; zero as soon as any y_i <= 0.
double scalarize(const ThetaSample& theta, const ObjectiveVector& y);

/// c_m = pi^(m/2) / (2^m Gamma(m/2 + 1)), the constant tying the expected
/// scalarization to the hypervolume.
double cm_constant(int m);

} // namespace comboo
