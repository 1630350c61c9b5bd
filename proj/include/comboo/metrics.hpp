#pragma once

#include <string>
#include <vector>

#include "comboo/engine.hpp"
#include "comboo/trajectory.hpp"

namespace comboo {

/// Per-round metric values derived from one trajectory.
struct MetricSeries {
    std::vector<double> hv;      // HV of truly feasible observed F values
    std::vector<double> r;       // hv_star - hv_t
    std::vector<std::vector<double>> v; // simple violations, [round][constraint]
    std::vector<double> vsum;    // sum_j v_{j,t}
    std::vector<double> R_cum;
    std::vector<std::vector<double>> V_cum; // [round][constraint]
    std::vector<double> C;       // constraint regret, min_tau (r_hat + vsum_hat)
};

/// [-g_j]^+ componentwise.
Eigen::VectorXd simple_violation(const Eigen::VectorXd& g_true);

/// All metrics of one trajectory. When normalize is on, the r and sum-v terms
/// inside C are each divided by their value at the first post-initialization
/// round (index n_init); a zero divisor leaves that term raw.
MetricSeries compute_series(const std::vector<TrajectoryRecord>& trajectory,
                            double hv_star, const ReferencePoint& z, bool normalize,
                            int n_init = 0);

/// Uniform random queries under the identical record schema and budget.
std::vector<TrajectoryRecord> random_search_run(const ProblemSpec& problem,
                                                const CandidateSet& candidates,
                                                const RunConfig& config, Rng& rng);

/// Cross-run summary of one metric at one round.
struct SummaryRow {
    int t = 0;
    std::string metric;
    double mean = 0.0;
    double median = 0.0;
    double lo = 0.0; // mean - 1.96 * se
    double hi = 0.0; // mean + 1.96 * se
};

/// Per-round mean / median / mean +- 1.96 * (sample sd / sqrt(n)) for every
/// metric, across >= 2 runs of equal length.
std::vector<SummaryRow> summarize(const std::vector<MetricSeries>& runs);

} // namespace comboo
