#include "comboo/pareto.hpp"

#include "comboo/errors.hpp"

namespace comboo {

bool dominates(const ObjectiveVector& y1, const ObjectiveVector& y2) {
    if (y1.size() != y2.size()) throw InputError("dominates: dimension mismatch");
    bool strict = false;
    for (Eigen::Index i = 0; i < y1.size(); ++i) {
        if (y1[i] < y2[i]) return false;
        if (y1[i] > y2[i]) strict = true;
    }
    return strict;
}

std::vector<ObjectiveVector> pareto_front(const std::vector<ObjectiveVector>& points) {
    std::vector<ObjectiveVector> front;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < points.size() && !dominated; ++j)
            if (j != i && dominates(points[j], points[i])) dominated = true;
        if (!dominated) front.push_back(points[i]);
    }
    return front;
}

} // namespace comboo
