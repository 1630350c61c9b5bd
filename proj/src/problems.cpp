#include "comboo/problems.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "comboo/errors.hpp"
#include "comboo/hypervolume.hpp"

namespace comboo {

namespace {

void check_bounds(const ProblemSpec& p, const Eigen::VectorXd& x) {
    if (x.size() != p.d)
        throw InputError(p.name + ": point has dimension " +
                         std::to_string(x.size()) + ", expected " +
                         std::to_string(p.d));
    if (p.is_discrete()) {
        for (Eigen::Index i = 0; i < p.discrete_candidates.rows(); ++i)
            if ((p.discrete_candidates.row(i).transpose() - x).lpNorm<Eigen::Infinity>() <
                1e-9)
                return;
        throw InputError(p.name + ": point is not in the discrete candidate set");
    }
    constexpr double tol = 1e-12;
    for (int i = 0; i < p.d; ++i)
        if (x[i] < p.lower[i] - tol || x[i] > p.upper[i] + tol)
            throw InputError(p.name + ": coordinate " + std::to_string(i) +
                             " = " + std::to_string(x[i]) + " is out of bounds");
}

std::vector<KernelSpec> matern_defaults(int count, int d, double lengthscale,
                                        double amplitude) {
    MaternKernel k;
    k.nu = 2.5;
    k.lengthscales = Eigen::VectorXd::Constant(d, lengthscale);
    k.amplitude = amplitude;
    return std::vector<KernelSpec>(count, KernelSpec{k});
}

} // namespace

Evaluation evaluate(const ProblemSpec& problem, const Eigen::VectorXd& x) {
    check_bounds(problem, x);
    return problem.evaluator(x);
}

Observation observe(const ProblemSpec& problem, const Eigen::VectorXd& x, Rng& rng) {
    Evaluation e = evaluate(problem, x);
    Observation obs;
    obs.x = x;
    obs.y_f = e.f;
    obs.y_g = e.g;
    for (int i = 0; i < problem.m; ++i)
        obs.y_f[i] += problem.noise_sd_f[i] * rng.gaussian();
    for (int j = 0; j < problem.c; ++j)
        obs.y_g[j] += problem.noise_sd_g[j] * rng.gaussian();
    return obs;
}

CandidateSet candidate_grid(const ProblemSpec& problem,
                            const std::vector<int>& resolution,
                            std::size_t size_cap) {
    if (problem.is_discrete()) return {problem.discrete_candidates};

    std::vector<int> res = resolution;
    if (res.size() == 1) res.assign(problem.d, res[0]);
    if (static_cast<int>(res.size()) != problem.d)
        throw ConfigError("candidate_grid: resolution must have 1 or d entries");
    std::size_t total = 1;
    for (int r : res) {
        if (r < 2) throw ConfigError("candidate_grid: resolution must be >= 2 per axis");
        if (total > size_cap / static_cast<std::size_t>(r))
            throw ConfigError("candidate_grid: grid size exceeds cap of " +
                              std::to_string(size_cap));
        total *= static_cast<std::size_t>(r);
    }

    Eigen::MatrixXd pts(static_cast<Eigen::Index>(total), problem.d);
    std::vector<int> idx(problem.d, 0);
    for (std::size_t row = 0; row < total; ++row) {
        for (int a = 0; a < problem.d; ++a) {
            double step = (problem.upper[a] - problem.lower[a]) / (res[a] - 1);
            pts(static_cast<Eigen::Index>(row), a) = problem.lower[a] + idx[a] * step;
        }
        for (int a = problem.d - 1; a >= 0; --a) { // last axis fastest
            if (++idx[a] < res[a]) break;
            idx[a] = 0;
        }
    }
    return {pts};
}

TrueFrontResult true_pareto_hv(const ProblemSpec& problem, const ReferencePoint& z,
                               const std::vector<int>& resolution,
                               std::size_t size_cap) {
    if (problem.m < 2 || problem.m > 3)
        throw InputError("true_pareto_hv: exact hypervolume needs m in {2, 3}");
    CandidateSet grid = candidate_grid(problem, resolution, size_cap);

    TrueFrontResult result;
    std::vector<ObjectiveVector> feasible_f;
    for (Eigen::Index i = 0; i < grid.points.rows(); ++i) {
        Evaluation e = evaluate(problem, grid.points.row(i));
        if (problem.c == 0 || e.g.minCoeff() >= 0.0) feasible_f.push_back(e.f);
    }
    result.any_feasible = !feasible_f.empty();
    if (!result.any_feasible) return result;
    result.front = pareto_front(feasible_f);
    result.hv_star = hypervolume_exact(result.front, z);
    return result;
}

ProblemSpec make_toy() {
    ProblemSpec p;
    p.name = "toy";
    p.d = 2;
    p.m = 2;
    p.c = 2;
    p.lower = Eigen::Vector2d(1.0, 1.0);
    p.upper = Eigen::Vector2d(1.5, 1.5);
    p.noise_sd_f = Eigen::Vector2d(0.05, 0.05);
    p.noise_sd_g = Eigen::Vector2d(0.05, 0.05);
    p.default_z = Eigen::Vector2d(-2.1, -2.3);
    p.default_kernels_f = matern_defaults(2, 2, 0.3, 1.0);
    p.default_kernels_g = matern_defaults(2, 2, 0.3, 1.0);
    p.evaluator = [](const Eigen::VectorXd& x) {
        Evaluation e;
        e.f = Eigen::Vector2d(-1.0 / x[0] - x[1], -x[0] - x[1] * x[1]);
        e.g = Eigen::Vector2d(e.f[0] + 1.9, e.f[1] + 2.25);
        return e;
    };
    return p;
}

ProblemSpec make_branin_currin() {
    ProblemSpec p;
    p.name = "branin_currin";
    p.d = 2;
    p.m = 2;
    p.c = 2;
    p.lower = Eigen::Vector2d(0.0, 0.0);
    p.upper = Eigen::Vector2d(1.0, 1.0);
    p.noise_sd_f = Eigen::Vector2d(0.01, 0.01);
    p.noise_sd_g = Eigen::Vector2d(0.01, 0.01);
    p.default_z = Eigen::Vector2d(-21.0, -7.0);
    // amplitudes sized to each function's variance over the unit square
    p.default_kernels_f = {matern_defaults(1, 2, 0.2, 2e4)[0],
                           matern_defaults(1, 2, 0.2, 9.0)[0]};
    p.default_kernels_g = p.default_kernels_f;
    p.evaluator = [](const Eigen::VectorXd& x) {
        double u = 15.0 * x[0] - 5.0;
        double inner = 5.1 * u * u / (4.0 * M_PI * M_PI) + 5.0 * u / M_PI - 5.0;
        double f1 =
            15.0 * x[1] - inner * inner + (10.0 - 10.0 / (8.0 * M_PI)) * std::cos(u);
        // removable singularity at x2 = 0: exp(-1/(2*0+)) -> 0
        double factor = x[1] == 0.0 ? 1.0 : 1.0 - std::exp(-1.0 / (2.0 * x[1]));
        double x1 = x[0];
        double f2 = factor *
                    (2300.0 * x1 * x1 * x1 + 1900.0 * x1 * x1 + 2092.0 * x1 + 60.0) /
                    (100.0 * x1 * x1 * x1 + 500.0 * x1 * x1 + 4.0 * x1 + 20.0);
        Evaluation e;
        e.f = Eigen::Vector2d(f1, f2);
        e.g = Eigen::Vector2d(f1 + 20.0, f2 + 6.0);
        return e;
    };
    return p;
}

ProblemSpec make_c2_dtlz2(int d) {
    if (d < 2) throw ConfigError("c2_dtlz2 needs d >= 2");
    ProblemSpec p;
    p.name = "c2_dtlz2";
    p.d = d;
    p.m = 2;
    p.c = 1;
    p.lower = Eigen::VectorXd::Zero(d);
    p.upper = Eigen::VectorXd::Ones(d);
    p.noise_sd_f = Eigen::Vector2d(0.05, 0.05);
    p.noise_sd_g = Eigen::VectorXd::Constant(1, 0.05);
    p.default_z = Eigen::Vector2d(-1.1, -1.1);
    p.default_kernels_f = matern_defaults(2, d, 0.3, 0.25);
    p.default_kernels_g = matern_defaults(1, d, 0.3, 0.25);
    p.default_resolution = d >= 4 ? 11 : 101;
    p.default_require_feasible_init = true;
    p.evaluator = [](const Eigen::VectorXd& x) {
        constexpr double r = 0.2;
        const int m = 2;
        double g = 0.0;
        for (Eigen::Index i = m - 1; i < x.size(); ++i)
            g += (x[i] - 0.5) * (x[i] - 0.5);
        double f1 = (1.0 + g) * std::cos(M_PI / 2.0 * x[0]);
        double f2 = (1.0 + g) * std::sin(M_PI / 2.0 * x[0]);
        // min-of-min constraint expression, r = 0.2; feasible where c >= 0
        double term_a = std::min((f1 - 1.0) * (f1 - 1.0) + (f2 * f2 - r * r),
                                 (f2 - 1.0) * (f2 - 1.0) + (f1 * f1 - r * r));
        double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
        double term_b = (f1 - inv_sqrt_m) * (f1 - inv_sqrt_m) - r * r +
                        (f2 - inv_sqrt_m) * (f2 - inv_sqrt_m) - r * r;
        Evaluation e;
        // the framework maximizes, DTLZ2 minimizes
        e.f = Eigen::Vector2d(-f1, -f2);
        e.g = Eigen::VectorXd::Constant(1, -std::min(term_a, term_b));
        return e;
    };
    return p;
}

ProblemSpec make_tanimoto_synth() {
    ProblemSpec p;
    p.name = "tanimoto_synth";
    p.d = 32;
    p.m = 2;
    p.c = 1;
    const int n = 200;
    Eigen::MatrixXd cands(n, p.d);
    Rng gen(0x7a19b4c3d2e1f005ULL);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p.d; ++j) cands(i, j) = gen.uniform() < 0.5 ? 0.0 : 1.0;
    p.discrete_candidates = cands;
    p.lower = Eigen::VectorXd::Zero(p.d);
    p.upper = Eigen::VectorXd::Ones(p.d);
    p.noise_sd_f = Eigen::Vector2d(0.01, 0.01);
    p.noise_sd_g = Eigen::VectorXd::Constant(1, 0.01);
    p.default_z = Eigen::Vector2d(0.0, 0.0);
    p.default_kernels_f.assign(2, KernelSpec{TanimotoKernel{1.0}});
    p.default_kernels_g.assign(1, KernelSpec{TanimotoKernel{1.0}});
    p.default_beta_coef = 0.1;
    p.evaluator = [](const Eigen::VectorXd& x) {
        int ones = 0;
        int transitions = 0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            if (x[i] > 0.5) ++ones;
            if (i > 0 && (x[i] > 0.5) != (x[i - 1] > 0.5)) ++transitions;
        }
        double density = static_cast<double>(ones) / static_cast<double>(x.size());
        double alternation =
            static_cast<double>(transitions) / static_cast<double>(x.size() - 1);
        Evaluation e;
        e.f = Eigen::Vector2d(density, alternation);
        e.g = Eigen::VectorXd::Constant(1, density - 0.25);
        return e;
    };
    return p;
}

ProblemSpec make_infeasible_toy() {
    ProblemSpec p = make_toy();
    p.name = "infeasible_toy";
    p.c = 1;
    p.noise_sd_g = Eigen::VectorXd::Constant(1, 0.05);
    p.known_feasible = false;
    p.default_kernels_g = matern_defaults(1, 2, 0.5, 1.0);
    p.default_resolution = 5;
    auto base = p.evaluator;
    p.evaluator = [base](const Eigen::VectorXd& x) {
        Evaluation e = base(x);
        e.g = Eigen::VectorXd::Constant(1, -1.0);
        return e;
    };
    return p;
}

ProblemSpec make_problem(const std::string& name) {
    if (name == "toy") return make_toy();
    if (name == "branin_currin") return make_branin_currin();
    if (name == "c2_dtlz2") return make_c2_dtlz2(4);
    if (name == "tanimoto_synth") return make_tanimoto_synth();
    if (name == "infeasible_toy") return make_infeasible_toy();
    throw ConfigError("unknown problem '" + name + "'");
}

std::vector<std::string> problem_registry() {
    return {"toy", "branin_currin", "c2_dtlz2", "tanimoto_synth", "infeasible_toy"};
}

ProblemSpec load_table_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table file '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw ConfigError("table file '" + path + "' is empty");
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    int d = 0, m = 0, c = 0;
    for (const auto& h : header) {
        if (h.rfind("x_", 0) == 0) ++d;
        else if (h.rfind("f_", 0) == 0) ++m;
        else if (h.rfind("g_", 0) == 0) ++c;
        else throw ConfigError("table column '" + h + "' must be x_*, f_* or g_*");
    }
    if (d == 0 || m == 0)
        throw ConfigError("table file needs at least one x_ and one f_ column");

    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> row;
        while (std::getline(ss, tok, ',')) row.push_back(std::stod(tok));
        if (static_cast<int>(row.size()) != d + m + c)
            throw ConfigError("table row has " + std::to_string(row.size()) +
                              " columns, expected " + std::to_string(d + m + c));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("table file has no data rows");

    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd X(n, d), F(n, m), G(n, std::max(c, 0));
    for (int i = 0; i < n; ++i) {
        for (int a = 0; a < d; ++a) X(i, a) = rows[i][a];
        for (int a = 0; a < m; ++a) F(i, a) = rows[i][d + a];
        for (int a = 0; a < c; ++a) G(i, a) = rows[i][d + m + a];
    }

    ProblemSpec p;
    p.name = "table";
    p.d = d;
    p.m = m;
    p.c = c;
    p.discrete_candidates = X;
    p.lower = X.colwise().minCoeff();
    p.upper = X.colwise().maxCoeff();
    p.noise_sd_f = Eigen::VectorXd::Zero(m);
    p.noise_sd_g = Eigen::VectorXd::Zero(c);
    p.default_z = F.colwise().minCoeff().transpose().array() - 1.0;
    for (int a = 0; a < m; ++a) {
        double var = (F.col(a).array() - F.col(a).mean()).square().mean();
        p.default_kernels_f.push_back(RbfKernel{std::max(var, 1e-12), static_cast<double>(d)});
    }
    for (int a = 0; a < c; ++a) {
        double var = (G.col(a).array() - G.col(a).mean()).square().mean();
        p.default_kernels_g.push_back(RbfKernel{std::max(var, 1e-12), static_cast<double>(d)});
    }
    p.evaluator = [X, F, G, m, c](const Eigen::VectorXd& x) {
        for (Eigen::Index i = 0; i < X.rows(); ++i) {
            if ((X.row(i).transpose() - x).lpNorm<Eigen::Infinity>() < 1e-9) {
                Evaluation e;
                e.f = F.row(i).transpose();
                e.g = c > 0 ? Eigen::VectorXd(G.row(i).transpose())
                            : Eigen::VectorXd(0);
                return e;
            }
        }
        throw InputError("table problem: point not found in table");
    };
    return p;
}

} // namespace comboo
