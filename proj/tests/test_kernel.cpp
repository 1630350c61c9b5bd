#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "comboo/errors.hpp"
#include "comboo/kernel.hpp"
#include "comboo/rng.hpp"

using namespace comboo;

TEST_CASE("rbf identity and direct formula") {
    KernelSpec k = RbfKernel{1.0, 1.0};
    Eigen::Vector2d a(0.3, -0.7);
    CHECK(kernel_eval(k, a, a) == doctest::Approx(1.0));
    Eigen::Vector2d o(0.0, 0.0), e1(1.0, 0.0);
    CHECK(kernel_eval(k, o, e1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    KernelSpec k2 = RbfKernel{2.5, 0.7};
    Eigen::Vector2d b(0.1, 0.9);
    double d2 = (a - b).squaredNorm();
    CHECK(kernel_eval(k2, a, b) ==
          doctest::Approx(2.5 * std::exp(-d2 / 0.7)).epsilon(1e-12));
}

TEST_CASE("tanimoto on binary fingerprints") {
    KernelSpec k = TanimotoKernel{1.0};
    Eigen::Vector3d x(1.0, 0.0, 1.0);
    CHECK(kernel_eval(k, x, x) == doctest::Approx(1.0));
    Eigen::Vector3d y(1.0, 1.0, 0.0);
    // x.y = 1, |x|^2 = 2, |y|^2 = 2 -> 1/(2+2-1)
    CHECK(kernel_eval(k, x, y) == doctest::Approx(1.0 / 3.0));
    Eigen::Vector3d zero(0.0, 0.0, 0.0);
    CHECK_THROWS_AS(kernel_eval(k, zero, zero), InputError);
}

TEST_CASE("matern closed forms") {
    Eigen::VectorXd ls = Eigen::VectorXd::Constant(2, 0.5);
    Eigen::Vector2d a(0.0, 0.0), b(0.3, 0.4); // scaled distance = 1.0
    double r = std::sqrt(std::pow(0.3 / 0.5, 2) + std::pow(0.4 / 0.5, 2));

    KernelSpec half = MaternKernel{0.5, ls, 2.0};
    CHECK(kernel_eval(half, a, b) == doctest::Approx(2.0 * std::exp(-r)).epsilon(1e-12));

    KernelSpec three_halves = MaternKernel{1.5, ls, 1.0};
    double s3 = std::sqrt(3.0) * r;
    CHECK(kernel_eval(three_halves, a, b) ==
          doctest::Approx((1.0 + s3) * std::exp(-s3)).epsilon(1e-12));

    KernelSpec five_halves = MaternKernel{2.5, ls, 1.0};
    double s5 = std::sqrt(5.0) * r;
    CHECK(kernel_eval(five_halves, a, b) ==
          doctest::Approx((1.0 + s5 + 5.0 * r * r / 3.0) * std::exp(-s5)).epsilon(1e-12));

    CHECK(kernel_eval(five_halves, a, a) == doctest::Approx(1.0));
    KernelSpec bad_nu = MaternKernel{1.0, ls, 1.0};
    CHECK_THROWS_AS(kernel_eval(bad_nu, a, b), InputError);
}

TEST_CASE("dimension mismatch rejected") {
    KernelSpec k = RbfKernel{1.0, 1.0};
    Eigen::Vector2d a(0.0, 0.0);
    Eigen::Vector3d b(0.0, 0.0, 0.0);
    CHECK_THROWS_AS(kernel_eval(k, a, b), InputError);
}

TEST_CASE("symmetry on random point pairs") {
    Rng rng(5);
    Eigen::VectorXd ls = Eigen::VectorXd::Constant(3, 0.4);
    std::vector<KernelSpec> specs = {RbfKernel{1.3, 0.8}, MaternKernel{2.5, ls, 0.9},
                                     TanimotoKernel{1.1}};
    for (const auto& spec : specs) {
        for (int rep = 0; rep < 50; ++rep) {
            Eigen::Vector3d a, b;
            for (int i = 0; i < 3; ++i) {
                a[i] = std::round(rng.uniform()); // binary works for all three
                b[i] = std::round(rng.uniform());
            }
            if (a.sum() == 0.0) a[0] = 1.0;
            if (b.sum() == 0.0) b[1] = 1.0;
            CHECK(kernel_eval(spec, a, b) == doctest::Approx(kernel_eval(spec, b, a)));
        }
    }
}

TEST_CASE("kernel matrices are PSD and match elementwise evaluation") {
    Rng rng(9);
    Eigen::MatrixXd X(8, 3);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 3; ++j) X(i, j) = rng.uniform();

    Eigen::VectorXd ls(3);
    ls << 0.3, 0.5, 0.7;
    std::vector<KernelSpec> specs = {RbfKernel{1.0, 0.5}, MaternKernel{1.5, ls, 2.0},
                                     TanimotoKernel{1.0}};
    for (const auto& spec : specs) {
        Eigen::MatrixXd K = kernel_matrix(spec, X);
        REQUIRE(K.rows() == 8);
        for (int i = 0; i < 8; ++i) {
            CHECK(K(i, i) == doctest::Approx(kernel_amplitude(spec)));
            for (int j = 0; j < 8; ++j)
                CHECK(K(i, j) ==
                      doctest::Approx(kernel_eval(spec, X.row(i), X.row(j)))
                          .epsilon(1e-12));
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8);
    }
}

TEST_CASE("cross-covariance matches elementwise evaluation") {
    Rng rng(13);
    Eigen::MatrixXd A(4, 2), B(6, 2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 2; ++j) A(i, j) = rng.uniform();
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 2; ++j) B(i, j) = rng.uniform();

    Eigen::VectorXd ls = Eigen::VectorXd::Constant(2, 0.6);
    for (const KernelSpec& spec :
         {KernelSpec{RbfKernel{1.2, 0.9}}, KernelSpec{MaternKernel{2.5, ls, 1.0}}}) {
        Eigen::MatrixXd C = kernel_cross(spec, A, B);
        REQUIRE(C.rows() == 4);
        REQUIRE(C.cols() == 6);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 6; ++j)
                CHECK(C(i, j) ==
                      doctest::Approx(kernel_eval(spec, A.row(i), B.row(j)))
                          .epsilon(1e-12));
    }
}
