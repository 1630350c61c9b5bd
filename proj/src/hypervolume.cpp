#include "comboo/hypervolume.hpp"

#include <algorithm>
#include <cmath>

#include "comboo/errors.hpp"

namespace comboo {

namespace {

// Sweep over points sorted by the first coordinate descending; each point
// adds the strip above the best second coordinate seen so far.
double hv2d(std::vector<Eigen::Vector2d> pts, double z0, double z1) {
    std::erase_if(pts, [&](const Eigen::Vector2d& p) {
        return p[0] <= z0 || p[1] <= z1;
    });
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
        if (a[0] != b[0]) return a[0] > b[0];
        return a[1] > b[1];
    });
    double hv = 0.0;
    double top = z1;
    for (const auto& p : pts) {
        if (p[1] > top) {
            hv += (p[0] - z0) * (p[1] - top);
            top = p[1];
        }
    }
    return hv;
}

// Slice along the third coordinate: the slab below each distinct level is a
// prism over the 2-D hypervolume of the points reaching that level.
double hv3d(const std::vector<ObjectiveVector>& points, const Eigen::Vector3d& z) {
    std::vector<Eigen::Vector3d> pts;
    for (const auto& p : points) {
        Eigen::Vector3d q(p[0], p[1], p[2]);
        if (q[0] > z[0] && q[1] > z[1] && q[2] > z[2]) pts.push_back(q);
    }
    std::vector<double> levels;
    for (const auto& p : pts) levels.push_back(p[2]);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    double hv = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        double top = levels[k];
        double bottom = (k + 1 < levels.size()) ? levels[k + 1] : z[2];
        std::vector<Eigen::Vector2d> slice;
        for (const auto& p : pts)
            if (p[2] >= top) slice.emplace_back(p[0], p[1]);
        hv += hv2d(std::move(slice), z[0], z[1]) * (top - bottom);
    }
    return hv;
}

} // namespace

double hypervolume_exact(const std::vector<ObjectiveVector>& points,
                         const ReferencePoint& z) {
    const Eigen::Index m = z.z.size();
    for (const auto& p : points)
        if (p.size() != m)
            throw InputError("hypervolume_exact: point/reference dimension mismatch");
    if (points.empty()) return 0.0;

    if (m == 2) {
        std::vector<Eigen::Vector2d> pts;
        pts.reserve(points.size());
        for (const auto& p : points) pts.emplace_back(p[0], p[1]);
        return hv2d(std::move(pts), z.z[0], z.z[1]);
    }
    if (m == 3) return hv3d(points, Eigen::Vector3d(z.z[0], z.z[1], z.z[2]));
    throw InputError(
        "hypervolume_exact: only m in {2, 3} is supported; use hypervolume_mc "
        "for higher dimensions");
}

double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ReferencePoint& z, int n_samples, Rng& rng) {
    if (n_samples < 1) throw InputError("hypervolume_mc: n_samples must be >= 1");
    const int m = static_cast<int>(z.z.size());
    for (const auto& p : points)
        if (p.size() != m)
            throw InputError("hypervolume_mc: point/reference dimension mismatch");

    double acc = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        ThetaSample theta = sample_theta(m, rng);
        double best = 0.0; // max over the empty set is 0
        for (const auto& p : points)
            best = std::max(best, scalarize(theta, p - z.z));
        acc += best;
    }
    return cm_constant(m) * acc / n_samples;
}

} // namespace comboo
