#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "comboo/errors.hpp"
#include "comboo/experiment.hpp"
#include "comboo/hypervolume.hpp"
#include "comboo/problems.hpp"

namespace {

std::string join(const Eigen::VectorXd& v, const char* sep = ";") {
    std::string out;
    char buf[32];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
        out += buf;
    }
    return out;
}

int cmd_run(const std::string& config_path, const std::string& baseline,
            const std::string& out_override) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file: " << config_path << "\n";
        return comboo::kExitConfigError;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    comboo::ExperimentConfig cfg = comboo::parse_config(buf.str());

    if (baseline == "random")
        cfg.baseline_random = true;
    else if (!baseline.empty())
        throw comboo::ConfigError("--baseline must be 'random'");
    if (const char* env = std::getenv("COMBOO_OUT_DIR"); env && *env)
        cfg.out_dir = env;
    if (!out_override.empty()) cfg.out_dir = out_override;

    comboo::ExperimentResult result = comboo::run_experiment(cfg);
    for (const auto& f : result.files) std::cout << f << "\n";
    if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
    return result.exit_code;
}

int cmd_compute_hv(const std::string& points_path, const std::vector<double>& z,
                   int mc_samples) {
    auto points = comboo::load_points_csv(points_path);
    for (const auto& p : points)
        if (p.size() != static_cast<Eigen::Index>(z.size()))
            throw comboo::InputError(
                "points file column count does not match --z dimension");
    comboo::ReferencePoint ref{
        Eigen::Map<const Eigen::VectorXd>(z.data(), static_cast<Eigen::Index>(z.size()))};
    double hv;
    if (mc_samples > 0) {
        comboo::Rng rng(comboo::derive_seed(2024, "compute-hv", 0));
        hv = comboo::hypervolume_mc(points, ref, mc_samples, rng);
    } else {
        hv = comboo::hypervolume_exact(points, ref);
    }
    std::printf("%#.10g\n", hv);
    return 0;
}

int cmd_list_problems(const std::string& format) {
    bool csv = format == "csv";
    if (csv)
        std::cout << "name,d,m,c,lower,upper,z,noise_sd_f,noise_sd_g,"
                     "beta_coef,resolution,known_feasible\n";
    for (const auto& name : comboo::problem_registry()) {
        comboo::ProblemSpec p = comboo::make_problem(name);
        if (csv) {
            std::cout << p.name << ',' << p.d << ',' << p.m << ',' << p.c << ','
                      << join(p.lower) << ',' << join(p.upper) << ','
                      << join(p.default_z) << ',' << join(p.noise_sd_f) << ','
                      << join(p.noise_sd_g) << ',' << p.default_beta_coef << ','
                      << p.default_resolution << ',' << (p.known_feasible ? 1 : 0)
                      << "\n";
        } else {
            std::cout << p.name << ": d=" << p.d << " m=" << p.m << " c=" << p.c;
            if (p.is_discrete())
                std::cout << " candidates=" << p.discrete_candidates.rows();
            else
                std::cout << " lower=[" << join(p.lower, ",") << "] upper=["
                          << join(p.upper, ",") << "]";
            std::cout << " z=[" << join(p.default_z, ",") << "]"
                      << " noise_f=[" << join(p.noise_sd_f, ",") << "]"
                      << " noise_g=[" << join(p.noise_sd_g, ",") << "]"
                      << " beta_coef=" << p.default_beta_coef
                      << " resolution=" << p.default_resolution
                      << " known_feasible=" << (p.known_feasible ? "yes" : "no")
                      << "\n";
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constrained multi-objective Bayesian optimization runner"};
    app.require_subcommand(1);

    std::string config_path, baseline, out_override;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment from a JSON config");
    run_cmd->add_option("config", config_path, "Path to JSON config")->required();
    run_cmd->add_option("--baseline", baseline, "Also run a baseline ('random')");
    run_cmd->add_option("--out", out_override, "Output directory override");

    std::string points_path;
    std::vector<double> z;
    int mc_samples = 0;
    auto* hv_cmd = app.add_subcommand("compute-hv",
                                      "Hypervolume of a CSV of objective vectors");
    hv_cmd->add_option("points", points_path, "CSV file of points")->required();
    hv_cmd->add_option("--z", z, "Reference point components")->required();
    hv_cmd->add_option("--mc", mc_samples,
                       "Use Monte Carlo estimation with this many samples");

    std::string format = "text";
    auto* list_cmd = app.add_subcommand("list-problems", "List registered problems");
    list_cmd->add_option("--format", format, "Output format: text or csv");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_path, baseline, out_override);
        if (hv_cmd->parsed()) return cmd_compute_hv(points_path, z, mc_samples);
        return cmd_list_problems(format);
    } catch (const comboo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return comboo::kExitConfigError;
    } catch (const comboo::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return comboo::kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return comboo::kExitRuntimeError;
    }
}
