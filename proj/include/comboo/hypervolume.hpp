#pragma once

#include <vector>

#include "comboo/scalarize.hpp"

namespace comboo {

/// Exact hypervolume dominated above z. Supported for m in {2, 3}
/// (2-D sorted sweep, 3-D slicing); m > 3 raises InputError pointing callers
/// at hypervolume_mc. Points at or below z contribute nothing.
double hypervolume_exact(const std::vector<ObjectiveVector>& points,
                         const ReferencePoint& z);

/// Monte Carlo estimate c_m * mean_k max_y s_{theta_k}(y - z).
/// Empty point set (or all points below z) gives 0.
double hypervolume_mc(const std::vector<ObjectiveVector>& points,
                      const ReferencePoint& z, int n_samples, Rng& rng);

} // namespace comboo
