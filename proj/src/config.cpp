#include "comboo/config.hpp"

#include <json.hpp>
#include <set>

#include "comboo/errors.hpp"

namespace comboo {

using nlohmann::json;

namespace {

KernelSpec kernel_from_json(const json& j, int d) {
    if (!j.is_object() || !j.contains("type"))
        throw ConfigError("kernel spec must be an object with a 'type' key");
    std::string type = j.at("type").get<std::string>();
    std::set<std::string> known;
    KernelSpec spec;
    if (type == "rbf") {
        known = {"type", "amplitude", "lengthscale_sq"};
        RbfKernel k;
        k.amplitude = j.value("amplitude", 1.0);
        k.lengthscale_sq = j.value("lengthscale_sq", 1.0);
        if (k.amplitude <= 0.0 || k.lengthscale_sq <= 0.0)
            throw ConfigError("rbf kernel parameters must be > 0");
        spec = k;
    } else if (type == "matern") {
        known = {"type", "amplitude", "nu", "lengthscale", "lengthscales"};
        MaternKernel k;
        k.amplitude = j.value("amplitude", 1.0);
        k.nu = j.value("nu", 2.5);
        if (j.contains("lengthscales")) {
            auto ls = j.at("lengthscales").get<std::vector<double>>();
            k.lengthscales = Eigen::Map<Eigen::VectorXd>(ls.data(), ls.size());
        } else {
            k.lengthscales = Eigen::VectorXd::Constant(d, j.value("lengthscale", 1.0));
        }
        if (k.amplitude <= 0.0 || k.lengthscales.minCoeff() <= 0.0)
            throw ConfigError("matern kernel parameters must be > 0");
        if (k.nu != 0.5 && k.nu != 1.5 && k.nu != 2.5)
            throw ConfigError("matern nu must be one of 0.5, 1.5, 2.5");
        spec = k;
    } else if (type == "tanimoto") {
        known = {"type", "amplitude"};
        TanimotoKernel k;
        k.amplitude = j.value("amplitude", 1.0);
        if (k.amplitude <= 0.0) throw ConfigError("tanimoto amplitude must be > 0");
        spec = k;
    } else {
        throw ConfigError("unknown kernel type '" + type + "'");
    }
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown kernel key '" + it.key() + "'");
    return spec;
}

json kernel_to_json(const KernelSpec& spec) {
    json j;
    std::visit(
        [&](const auto& k) {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, RbfKernel>) {
                j["type"] = "rbf";
                j["amplitude"] = k.amplitude;
                j["lengthscale_sq"] = k.lengthscale_sq;
            } else if constexpr (std::is_same_v<T, MaternKernel>) {
                j["type"] = "matern";
                j["amplitude"] = k.amplitude;
                j["nu"] = k.nu;
                j["lengthscales"] =
                    std::vector<double>(k.lengthscales.data(),
                                        k.lengthscales.data() + k.lengthscales.size());
            } else {
                j["type"] = "tanimoto";
                j["amplitude"] = k.amplitude;
            }
        },
        spec);
    return j;
}

std::vector<KernelSpec> kernel_list_from_json(const json& j, int count, int d,
                                              const std::string& key) {
    std::vector<KernelSpec> out;
    if (j.is_array()) {
        for (const auto& e : j) out.push_back(kernel_from_json(e, d));
        if (static_cast<int>(out.size()) != count)
            throw ConfigError(key + " must have exactly " + std::to_string(count) +
                              " entries");
    } else {
        out.assign(count, kernel_from_json(j, d));
    }
    return out;
}

std::vector<double> real_list(const json& j, int count, const std::string& key) {
    std::vector<double> out;
    if (j.is_array())
        out = j.get<std::vector<double>>();
    else
        out.assign(count, j.get<double>());
    if (static_cast<int>(out.size()) != count)
        throw ConfigError(key + " must have exactly " + std::to_string(count) +
                          " entries");
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    static const std::set<std::string> known = {
        "problem", "table_path", "T", "n_init", "base_seed", "seeds", "z",
        "resolution", "beta", "mode", "kernel_f", "kernel_g", "noise_sd_f",
        "noise_sd_g", "require_feasible_init", "continue_after_declaration",
        "normalize_metrics", "mc_samples", "baseline", "out_dir", "grid_cap",
        "c_tau", "lengthscale_grid", "grid_size_cap"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown config key '" + it.key() + "'");

    ExperimentConfig cfg;
    if (!j.contains("problem")) throw ConfigError("config requires 'problem'");
    cfg.problem = j.at("problem").get<std::string>();
    cfg.table_path = j.value("table_path", std::string{});

    ProblemSpec problem = cfg.problem == "table" ? load_table_problem(cfg.table_path)
                                                 : make_problem(cfg.problem);

    cfg.T = j.value("T", 60);
    if (cfg.T < 0) throw ConfigError("T must be >= 0");
    cfg.n_init = j.value("n_init", 10);
    if (cfg.n_init < 0) throw ConfigError("n_init must be >= 0");
    cfg.base_seed = j.value("base_seed", std::uint64_t{2024});

    if (j.contains("seeds")) {
        const auto& s = j.at("seeds");
        if (s.is_array())
            cfg.seed_indices = s.get<std::vector<std::uint64_t>>();
        else {
            int n = s.get<int>();
            if (n < 1) throw ConfigError("seeds count must be >= 1");
            for (int i = 0; i < n; ++i) cfg.seed_indices.push_back(i);
        }
    } else {
        cfg.seed_indices = {0};
    }

    if (j.contains("z"))
        cfg.z = real_list(j.at("z"), problem.m, "z");
    else
        cfg.z.assign(problem.default_z.data(), problem.default_z.data() + problem.m);

    if (j.contains("resolution")) {
        const auto& r = j.at("resolution");
        if (r.is_array())
            cfg.resolution = r.get<std::vector<int>>();
        else
            cfg.resolution = {r.get<int>()};
    } else {
        cfg.resolution = {problem.default_resolution};
    }

    if (j.contains("beta")) {
        const auto& b = j.at("beta");
        static const std::set<std::string> bkeys = {"kind", "coef", "delta"};
        for (auto it = b.begin(); it != b.end(); ++it)
            if (!bkeys.count(it.key()))
                throw ConfigError("unknown beta key '" + it.key() + "'");
        std::string kind = b.value("kind", std::string("experimental"));
        if (kind == "lemma1")
            cfg.beta_kind = BetaSchedule::Kind::Lemma1;
        else if (kind == "experimental")
            cfg.beta_kind = BetaSchedule::Kind::Experimental;
        else
            throw ConfigError("beta kind must be 'lemma1' or 'experimental'");
        cfg.beta_coef = b.value("coef", problem.default_beta_coef);
        cfg.delta = b.value("delta", 0.1);
    } else {
        cfg.beta_coef = problem.default_beta_coef;
    }
    if (cfg.delta <= 0.0 || cfg.delta >= 1.0)
        throw ConfigError("delta must be in (0,1)");

    std::string mode = j.value("mode", std::string("discrete"));
    if (mode == "discrete")
        cfg.mode = SearchMode::Discrete;
    else if (mode == "discretized-continuous")
        cfg.mode = SearchMode::DiscretizedContinuous;
    else
        throw ConfigError("mode must be 'discrete' or 'discretized-continuous'");

    cfg.kernels_f = j.contains("kernel_f")
                        ? kernel_list_from_json(j.at("kernel_f"), problem.m,
                                                problem.d, "kernel_f")
                        : problem.default_kernels_f;
    cfg.kernels_g = j.contains("kernel_g")
                        ? kernel_list_from_json(j.at("kernel_g"), problem.c,
                                                problem.d, "kernel_g")
                        : problem.default_kernels_g;

    cfg.noise_sd_f =
        j.contains("noise_sd_f")
            ? real_list(j.at("noise_sd_f"), problem.m, "noise_sd_f")
            : std::vector<double>(problem.noise_sd_f.data(),
                                  problem.noise_sd_f.data() + problem.m);
    cfg.noise_sd_g =
        j.contains("noise_sd_g")
            ? real_list(j.at("noise_sd_g"), problem.c, "noise_sd_g")
            : std::vector<double>(problem.noise_sd_g.data(),
                                  problem.noise_sd_g.data() + problem.c);
    for (double s : cfg.noise_sd_f)
        if (s < 0.0) throw ConfigError("noise_sd_f must be >= 0");
    for (double s : cfg.noise_sd_g)
        if (s < 0.0) throw ConfigError("noise_sd_g must be >= 0");

    cfg.require_feasible_init =
        j.value("require_feasible_init", problem.default_require_feasible_init);
    cfg.continue_after_declaration = j.value("continue_after_declaration", false);
    cfg.normalize_metrics = j.value("normalize_metrics", true);
    cfg.mc_samples = j.value("mc_samples", 100000);
    if (cfg.mc_samples < 1) throw ConfigError("mc_samples must be >= 1");

    std::string baseline = j.value("baseline", std::string("none"));
    if (baseline == "random")
        cfg.baseline_random = true;
    else if (baseline == "none")
        cfg.baseline_random = false;
    else
        throw ConfigError("baseline must be 'random' or 'none'");

    cfg.out_dir = j.value("out_dir", std::string("out"));
    cfg.grid_cap = j.value("grid_cap", 64);
    if (cfg.grid_cap < 2) throw ConfigError("grid_cap must be >= 2");
    cfg.c_tau = j.value("c_tau", 1.0);
    if (cfg.c_tau <= 0.0) throw ConfigError("c_tau must be > 0");
    cfg.lengthscale_grid =
        j.value("lengthscale_grid", std::vector<double>{});
    for (double v : cfg.lengthscale_grid)
        if (v <= 0.0) throw ConfigError("lengthscale_grid entries must be > 0");
    cfg.grid_size_cap = j.value("grid_size_cap", std::uint64_t{1000000});
    return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
    json j;
    j["problem"] = cfg.problem;
    if (!cfg.table_path.empty()) j["table_path"] = cfg.table_path;
    j["T"] = cfg.T;
    j["n_init"] = cfg.n_init;
    j["base_seed"] = cfg.base_seed;
    j["seeds"] = cfg.seed_indices;
    j["z"] = cfg.z;
    j["resolution"] = cfg.resolution.size() == 1 ? json(cfg.resolution[0])
                                                 : json(cfg.resolution);
    j["beta"] = {
        {"kind", cfg.beta_kind == BetaSchedule::Kind::Lemma1 ? "lemma1"
                                                             : "experimental"},
        {"coef", cfg.beta_coef},
        {"delta", cfg.delta}};
    j["mode"] = cfg.mode == SearchMode::Discrete ? "discrete"
                                                 : "discretized-continuous";
    json kf = json::array();
    for (const auto& k : cfg.kernels_f) kf.push_back(kernel_to_json(k));
    j["kernel_f"] = kf;
    json kg = json::array();
    for (const auto& k : cfg.kernels_g) kg.push_back(kernel_to_json(k));
    j["kernel_g"] = kg;
    j["noise_sd_f"] = cfg.noise_sd_f;
    j["noise_sd_g"] = cfg.noise_sd_g;
    j["require_feasible_init"] = cfg.require_feasible_init;
    j["continue_after_declaration"] = cfg.continue_after_declaration;
    j["normalize_metrics"] = cfg.normalize_metrics;
    j["mc_samples"] = cfg.mc_samples;
    j["baseline"] = cfg.baseline_random ? "random" : "none";
    j["out_dir"] = cfg.out_dir;
    j["grid_cap"] = cfg.grid_cap;
    j["c_tau"] = cfg.c_tau;
    j["lengthscale_grid"] = cfg.lengthscale_grid;
    j["grid_size_cap"] = cfg.grid_size_cap;
    return j.dump(2);
}

ProblemSpec problem_from_config(const ExperimentConfig& cfg) {
    ProblemSpec p = cfg.problem == "table" ? load_table_problem(cfg.table_path)
                                           : make_problem(cfg.problem);
    p.noise_sd_f = Eigen::Map<const Eigen::VectorXd>(cfg.noise_sd_f.data(), p.m);
    p.noise_sd_g = Eigen::Map<const Eigen::VectorXd>(cfg.noise_sd_g.data(), p.c);
    return p;
}

RunConfig run_config_from(const ExperimentConfig& cfg, const ProblemSpec& problem,
                          Eigen::Index n_candidates) {
    RunConfig rc;
    rc.T = cfg.T;
    rc.n_init = cfg.n_init;
    rc.beta.kind = cfg.beta_kind;
    rc.beta.coef = cfg.beta_coef;
    rc.beta.delta = cfg.delta;
    rc.beta.m = problem.m;
    rc.beta.c = problem.c;
    rc.beta.domain_size = static_cast<double>(n_candidates);
    rc.z.z = Eigen::Map<const Eigen::VectorXd>(cfg.z.data(), problem.m);
    rc.mode = cfg.mode;
    rc.require_feasible_init = cfg.require_feasible_init;
    rc.continue_after_declaration = cfg.continue_after_declaration;
    rc.kernels_f = cfg.kernels_f;
    rc.kernels_g = cfg.kernels_g;
    rc.grid_cap = cfg.grid_cap;
    rc.c_tau = cfg.c_tau;
    rc.lengthscale_grid = cfg.lengthscale_grid;
    return rc;
}

} // namespace comboo
