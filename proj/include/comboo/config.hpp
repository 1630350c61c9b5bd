#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comboo/engine.hpp"

namespace comboo {

/// Fully resolved experiment configuration. Parsing applies per-problem
/// defaults, so every field below is populated after parse_config.
struct ExperimentConfig {
    std::string problem;
    std::string table_path; // only for problem == "table"
    int T = 60;
    int n_init = 10;
    std::uint64_t base_seed = 2024;
    std::vector<std::uint64_t> seed_indices;
    std::vector<double> z;
    std::vector<int> resolution;
    BetaSchedule::Kind beta_kind = BetaSchedule::Kind::Experimental;
    double beta_coef = 0.4;
    double delta = 0.1;
    SearchMode mode = SearchMode::Discrete;
    std::vector<KernelSpec> kernels_f;
    std::vector<KernelSpec> kernels_g;
    std::vector<double> noise_sd_f;
    std::vector<double> noise_sd_g;
    bool require_feasible_init = false;
    bool continue_after_declaration = false;
    bool normalize_metrics = true;
    int mc_samples = 100000;
    bool baseline_random = false;
    std::string out_dir = "out";
    int grid_cap = 64;
    double c_tau = 1.0;
    std::vector<double> lengthscale_grid;
    std::uint64_t grid_size_cap = 1000000;
};

/// Parse and validate a JSON configuration document. Unknown keys are
/// rejected; defaults come from the named problem's registry entry.
ExperimentConfig parse_config(const std::string& text);

/// Canonical JSON of a resolved config; parse_config(serialize_config(c))
/// reproduces c.
std::string serialize_config(const ExperimentConfig& config);

/// Instantiate the problem named by the config with its overrides applied.
ProblemSpec problem_from_config(const ExperimentConfig& config);

/// Engine-level RunConfig for this experiment (domain_size is filled in from
/// the candidate count).
RunConfig run_config_from(const ExperimentConfig& config, const ProblemSpec& problem,
                          Eigen::Index n_candidates);

} // namespace comboo
