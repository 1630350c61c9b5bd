#include <doctest.h>

#include <cmath>

#include "comboo/errors.hpp"
#include "comboo/hypervolume.hpp"
#include "oracles.hpp"

using namespace comboo;

namespace {

ReferencePoint origin(int m) { return {Eigen::VectorXd::Zero(m)}; }

} // namespace

TEST_CASE("2-d exact values") {
    CHECK(hypervolume_exact({Eigen::Vector2d(1.0, 1.0)}, origin(2)) ==
          doctest::Approx(1.0));
    CHECK(hypervolume_exact({Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(2.0, 1.0)},
                            origin(2)) == doctest::Approx(3.0));
    CHECK(hypervolume_exact({}, origin(2)) == 0.0);
    // points at or below z contribute nothing
    CHECK(hypervolume_exact({Eigen::Vector2d(-1.0, 5.0), Eigen::Vector2d(0.0, 0.0)},
                            origin(2)) == 0.0);
    // dominated point changes nothing
    CHECK(hypervolume_exact({Eigen::Vector2d(2.0, 2.0), Eigen::Vector2d(1.0, 1.0)},
                            origin(2)) == doctest::Approx(4.0));
}

TEST_CASE("3-d exact values") {
    CHECK(hypervolume_exact({Eigen::Vector3d(1.0, 1.0, 1.0)}, origin(3)) ==
          doctest::Approx(1.0));
    // two unit boxes overlapping in [0,1]x[0,1]x[0,1] scaled differently
    std::vector<ObjectiveVector> pts = {Eigen::Vector3d(2.0, 1.0, 1.0),
                                        Eigen::Vector3d(1.0, 2.0, 1.0)};
    // union = 2 + 2 - 1
    CHECK(hypervolume_exact(pts, origin(3)) == doctest::Approx(3.0));
}

TEST_CASE("unsupported dimension points to the MC estimator") {
    Eigen::VectorXd p = Eigen::VectorXd::Ones(4);
    CHECK_THROWS_AS(hypervolume_exact({p}, {Eigen::VectorXd::Zero(4)}), InputError);
}

TEST_CASE("exact matches the grid-counting oracle") {
    Rng rng(10);
    for (int rep = 0; rep < 6; ++rep) {
        std::vector<ObjectiveVector> pts;
        for (int i = 0; i < 6; ++i)
            pts.push_back(Eigen::Vector2d(rng.uniform(), rng.uniform()));
        double exact = hypervolume_exact(pts, origin(2));
        double grid = oracles::hv_grid_count(pts, Eigen::Vector2d::Zero(), 1000);
        CHECK(std::abs(exact - grid) <= 0.005 * std::max(exact, 1e-12));
    }
    for (int rep = 0; rep < 3; ++rep) {
        std::vector<ObjectiveVector> pts;
        for (int i = 0; i < 5; ++i)
            pts.push_back(Eigen::Vector3d(rng.uniform(), rng.uniform(), rng.uniform()));
        double exact = hypervolume_exact(pts, origin(3));
        double grid = oracles::hv_grid_count(pts, Eigen::Vector3d::Zero(), 100);
        CHECK(std::abs(exact - grid) <= 0.005 * std::max(exact, 1e-12));
    }
}

TEST_CASE("adding a point never decreases exact hypervolume") {
    Rng rng(12);
    std::vector<ObjectiveVector> pts;
    double prev = 0.0;
    for (int i = 0; i < 30; ++i) {
        pts.push_back(Eigen::Vector2d(rng.uniform(), rng.uniform()));
        double hv = hypervolume_exact(pts, origin(2));
        CHECK(hv >= prev - 1e-15);
        prev = hv;
    }
}

TEST_CASE("Monte Carlo estimator") {
    Rng rng(14);
    CHECK(hypervolume_mc({}, origin(2), 1000, rng) == 0.0);

    Rng r1(14);
    double unit = hypervolume_mc({Eigen::Vector2d(1.0, 1.0)}, origin(2), 100000, r1);
    CHECK(std::abs(unit - 1.0) < 0.02);

    Rng r2(15);
    double three = hypervolume_mc(
        {Eigen::Vector2d(1.0, 2.0), Eigen::Vector2d(2.0, 1.0)}, origin(2), 100000, r2);
    CHECK(std::abs(three - 3.0) < 0.06);

    // all points below z -> 0
    Rng r3(16);
    CHECK(hypervolume_mc({Eigen::Vector2d(-1.0, -1.0)}, origin(2), 1000, r3) == 0.0);
}
