#include "comboo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "comboo/errors.hpp"
#include "comboo/hypervolume.hpp"

namespace comboo {

Eigen::VectorXd simple_violation(const Eigen::VectorXd& g_true) {
    return (-g_true.array()).max(0.0);
}

MetricSeries compute_series(const std::vector<TrajectoryRecord>& trajectory,
                            double hv_star, const ReferencePoint& z, bool normalize,
                            int n_init) {
    if (hv_star < 0.0) throw InputError("compute_series: hv_star must be >= 0");
    MetricSeries s;
    std::vector<ObjectiveVector> feasible_points;

    int expected_t = 1;
    for (const auto& rec : trajectory) {
        if (rec.t != expected_t++)
            throw InputError("compute_series: record t values must be contiguous "
                             "starting at 1");
        if (rec.queried() && rec.feasible_true) feasible_points.push_back(rec.f_true);

        double hv = hypervolume_exact(feasible_points, z);
        s.hv.push_back(hv);
        s.r.push_back(hv_star - hv);

        Eigen::VectorXd v = rec.queried() && rec.g_true.size() > 0
                                ? simple_violation(rec.g_true)
                                : Eigen::VectorXd();
        std::vector<double> vrow(v.data(), v.data() + v.size());
        s.vsum.push_back(v.size() > 0 ? v.sum() : 0.0);
        s.v.push_back(std::move(vrow));
    }

    const std::size_t n = s.hv.size();
    const std::size_t n_constraints =
        n == 0 ? 0 : std::max_element(s.v.begin(), s.v.end(), [](auto& a, auto& b) {
                         return a.size() < b.size();
                     })->size();
    for (auto& row : s.v) row.resize(n_constraints, 0.0);

    double acc_r = 0.0;
    std::vector<double> acc_v(n_constraints, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        acc_r += s.r[i];
        s.R_cum.push_back(acc_r);
        for (std::size_t j = 0; j < n_constraints; ++j) acc_v[j] += s.v[i][j];
        s.V_cum.push_back(acc_v);
    }

    double denom_r = 1.0, denom_v = 1.0;
    if (normalize && static_cast<std::size_t>(n_init) < n) {
        if (s.r[n_init] > 0.0) denom_r = s.r[n_init];
        if (s.vsum[n_init] > 0.0) denom_v = s.vsum[n_init];
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, s.r[i] / denom_r + s.vsum[i] / denom_v);
        s.C.push_back(best);
    }
    return s;
}

std::vector<TrajectoryRecord> random_search_run(const ProblemSpec& problem,
                                                const CandidateSet& candidates,
                                                const RunConfig& config, Rng& rng) {
    if (config.T < 0 || config.n_init < 0)
        throw ConfigError("random_search_run: T and n_init must be >= 0");
    const Eigen::Index n_cand = candidates.points.rows();
    if (n_cand == 0) throw ConfigError("random_search_run: empty candidate set");

    std::vector<TrajectoryRecord> records;
    for (int k = 0; k < config.n_init + config.T; ++k) {
        Eigen::Index pick = static_cast<Eigen::Index>(rng.index(n_cand));
        Observation obs = observe(problem, candidates.points.row(pick), rng);
        Evaluation truth = evaluate(problem, obs.x);

        TrajectoryRecord rec;
        rec.t = k + 1;
        rec.is_init = k < config.n_init;
        rec.x = obs.x;
        rec.f_true = truth.f;
        rec.g_true = truth.g;
        rec.y_f = obs.y_f;
        rec.y_g = obs.y_g;
        rec.feasible_true = problem.c == 0 || truth.g.minCoeff() >= 0.0;
        rec.feasible_set_size = static_cast<int>(n_cand);
        records.push_back(std::move(rec));
    }
    return records;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

void summarize_metric(std::vector<SummaryRow>& out, const std::string& name, int t,
                      const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / (n - 1.0));
    double half = 1.96 * sd / std::sqrt(n);
    out.push_back({t, name, mean, median_of(values), mean - half, mean + half});
}

} // namespace

std::vector<SummaryRow> summarize(const std::vector<MetricSeries>& runs) {
    if (runs.size() < 2) throw InputError("summarize: need >= 2 runs");
    const std::size_t len = runs.front().hv.size();
    std::size_t n_constraints = runs.front().v.empty() ? 0 : runs.front().v[0].size();
    for (const auto& run : runs)
        if (run.hv.size() != len)
            throw InputError("summarize: runs have unequal lengths");

    std::vector<SummaryRow> out;
    for (std::size_t i = 0; i < len; ++i) {
        int t = static_cast<int>(i) + 1;
        auto gather = [&](auto&& get) {
            std::vector<double> vals;
            vals.reserve(runs.size());
            for (const auto& run : runs) vals.push_back(get(run));
            return vals;
        };
        summarize_metric(out, "hv", t, gather([&](const MetricSeries& s) { return s.hv[i]; }));
        summarize_metric(out, "r", t, gather([&](const MetricSeries& s) { return s.r[i]; }));
        summarize_metric(out, "R_cum", t,
                         gather([&](const MetricSeries& s) { return s.R_cum[i]; }));
        summarize_metric(out, "C", t, gather([&](const MetricSeries& s) { return s.C[i]; }));
        summarize_metric(out, "vsum", t,
                         gather([&](const MetricSeries& s) { return s.vsum[i]; }));
        for (std::size_t j = 0; j < n_constraints; ++j)
            summarize_metric(out, "V_cum_" + std::to_string(j), t,
                             gather([&](const MetricSeries& s) { return s.V_cum[i][j]; }));
    }
    return out;
}

} // namespace comboo
