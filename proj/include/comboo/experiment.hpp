#pragma once

#include <string>
#include <vector>

#include "comboo/config.hpp"
#include "comboo/metrics.hpp"

namespace comboo {

// CLI exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;
inline constexpr int kExitDeclaredOnFeasible = 4;

struct ExperimentResult {
    int exit_code = kExitOk;
    std::vector<std::string> files;
    std::string error;
};

/// Run every (method, seed) combination, writing one trajectory CSV each plus
/// a per-method summary CSV and a manifest. Deterministic given the config.
/// On failure, partial outputs are kept next to a FAILED marker file.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Serialize one trajectory (with its metric series) to the fixed CSV schema.
std::string trajectory_csv(const std::vector<TrajectoryRecord>& records,
                           const MetricSeries& series, const std::string& method,
                           std::uint64_t seed_index, int d, int m, int c);

/// Plain numeric CSV of objective vectors (one point per row, m columns).
/// A non-numeric first row is treated as a header and skipped.
std::vector<ObjectiveVector> load_points_csv(const std::string& path);

/// Deterministic float formatting used by all CSV output.
std::string format_double(double v);

} // namespace comboo
