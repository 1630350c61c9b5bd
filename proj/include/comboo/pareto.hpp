#pragma once

#include <vector>

#include "comboo/scalarize.hpp"

namespace comboo {

/// y1 >= y2 componentwise with at least one strict inequality.
bool dominates(const ObjectiveVector& y1, const ObjectiveVector& y2);

/// Maximal (non-dominated) subset. Input order of survivors is preserved and
/// exact duplicates are all retained.
std::vector<ObjectiveVector> pareto_front(const std::vector<ObjectiveVector>& points);

} // namespace comboo
