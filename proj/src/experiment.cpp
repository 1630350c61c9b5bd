#include "comboo/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "comboo/errors.hpp"
#include "comboo/problems.hpp"

namespace comboo {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_vector(std::string& row, const Eigen::VectorXd& v, int expected) {
    for (int i = 0; i < expected; ++i) {
        row += ',';
        if (i < v.size()) row += format_double(v[i]);
    }
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open for writing: " + path.string());
    out << content;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string text = "t,metric,mean,median,lo,hi\n";
    for (const auto& r : rows) {
        text += std::to_string(r.t) + ',' + r.metric + ',' + format_double(r.mean) +
                ',' + format_double(r.median) + ',' + format_double(r.lo) + ',' +
                format_double(r.hi) + '\n';
    }
    return text;
}

} // namespace

std::string trajectory_csv(const std::vector<TrajectoryRecord>& records,
                           const MetricSeries& series, const std::string& method,
                           std::uint64_t seed_index, int d, int m, int c) {
    std::string text = "t,method,seed";
    for (int i = 0; i < d; ++i) text += ",x_" + std::to_string(i);
    for (int i = 0; i < m; ++i) text += ",f_" + std::to_string(i);
    for (int j = 0; j < c; ++j) text += ",g_" + std::to_string(j);
    for (int i = 0; i < m; ++i) text += ",yf_" + std::to_string(i);
    for (int j = 0; j < c; ++j) text += ",yg_" + std::to_string(j);
    text += ",beta,feasible,declared,hv,r";
    for (int j = 0; j < c; ++j) text += ",v_" + std::to_string(j);
    text += ",R_cum";
    for (int j = 0; j < c; ++j) text += ",V_cum_" + std::to_string(j);
    text += ",C\n";

    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        std::string row = std::to_string(rec.t) + ',' + method + ',' +
                          std::to_string(seed_index);
        append_vector(row, rec.x, d);
        append_vector(row, rec.f_true, m);
        append_vector(row, rec.g_true, c);
        append_vector(row, rec.y_f, m);
        append_vector(row, rec.y_g, c);
        row += ',' + format_double(rec.beta);
        row += rec.feasible_true ? ",1" : ",0";
        row += rec.declared ? ",1" : ",0";
        row += ',' + format_double(series.hv[i]);
        row += ',' + format_double(series.r[i]);
        for (int j = 0; j < c; ++j) row += ',' + format_double(series.v[i][j]);
        row += ',' + format_double(series.R_cum[i]);
        for (int j = 0; j < c; ++j) row += ',' + format_double(series.V_cum[i][j]);
        row += ',' + format_double(series.C[i]);
        text += row + '\n';
    }
    return text;
}

std::vector<ObjectiveVector> load_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open points file: " + path);
    std::vector<ObjectiveVector> points;
    std::string line;
    bool first = true;
    Eigen::Index width = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t pos = 0;
                vals.push_back(std::stod(cell, &pos));
                if (pos != cell.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
            if (!numeric) break;
        }
        if (!numeric) {
            if (first) { first = false; continue; } // header row
            throw InputError("non-numeric value in points file: " + line);
        }
        first = false;
        if (width < 0) width = static_cast<Eigen::Index>(vals.size());
        if (static_cast<Eigen::Index>(vals.size()) != width)
            throw InputError("points file has rows with mixed column counts");
        points.push_back(
            Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
    }
    return points;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    const fs::path out_dir(config.out_dir);
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        result.exit_code = kExitConfigError;
        result.error = "cannot create output directory: " + out_dir.string();
        return result;
    }

    auto record_file = [&](const fs::path& p, const std::string& content) {
        write_file(p, content);
        result.files.push_back(p.string());
    };

    try {
        ProblemSpec problem = problem_from_config(config);
        CandidateSet candidates =
            candidate_grid(problem, config.resolution, config.grid_size_cap);
        TrueFrontResult truth = true_pareto_hv(problem, ReferencePoint{Eigen::Map<
                                                   const Eigen::VectorXd>(
                                                   config.z.data(), problem.m)},
                                               config.resolution, config.grid_size_cap);
        RunConfig rc = run_config_from(config, problem, candidates.points.rows());

        std::vector<std::string> methods = {"comboo"};
        if (config.baseline_random) methods.push_back("random");

        json manifest;
        manifest["config"] = json::parse(serialize_config(config));
        manifest["hv_star"] = truth.hv_star;
        manifest["front_size"] = truth.front.size();
        manifest["any_feasible_on_grid"] = truth.any_feasible;
        manifest["n_candidates"] = candidates.points.rows();
        json runs = json::array();

        bool declared_on_known_feasible = false;

        for (const auto& method : methods) {
            std::vector<MetricSeries> all_series;
            std::size_t min_len = std::numeric_limits<std::size_t>::max();

            for (std::uint64_t idx : config.seed_indices) {
                std::uint64_t seed = derive_seed(config.base_seed, method, idx);
                Rng rng(seed);
                std::vector<TrajectoryRecord> records =
                    method == "comboo" ? run(problem, candidates, rc, rng)
                                       : random_search_run(problem, candidates, rc, rng);
                MetricSeries series = compute_series(records, truth.hv_star, rc.z,
                                                     config.normalize_metrics,
                                                     config.n_init);
                fs::path traj = out_dir / ("trajectory_" + method + "_seed" +
                                           std::to_string(idx) + ".csv");
                record_file(traj, trajectory_csv(records, series, method, idx,
                                                 problem.d, problem.m, problem.c));

                int declaration_round = 0;
                for (const auto& rec : records)
                    if (rec.declared && declaration_round == 0) declaration_round = rec.t;
                if (declaration_round > 0 && problem.known_feasible)
                    declared_on_known_feasible = true;

                json run_info;
                run_info["method"] = method;
                run_info["seed_index"] = idx;
                run_info["derived_seed"] = seed;
                run_info["rounds"] = records.size();
                run_info["declaration_round"] = declaration_round;
                run_info["trajectory_file"] = traj.filename().string();
                runs.push_back(run_info);

                min_len = std::min(min_len, series.hv.size());
                all_series.push_back(std::move(series));
            }

            if (all_series.size() >= 2) {
                // Truncate to the shortest run so declarations do not skew the
                // cross-seed bands; the manifest records the common length.
                for (auto& s : all_series) {
                    s.hv.resize(min_len);
                    s.r.resize(min_len);
                    s.v.resize(min_len);
                    s.vsum.resize(min_len);
                    s.R_cum.resize(min_len);
                    s.V_cum.resize(min_len);
                    s.C.resize(min_len);
                }
                fs::path summ = out_dir / ("summary_" + method + ".csv");
                record_file(summ, summary_csv(summarize(all_series)));
                manifest["summary_length_" + method] = min_len;
            }
        }

        manifest["runs"] = runs;
        fs::path mpath = out_dir / "manifest.json";
        record_file(mpath, manifest.dump(2) + "\n");

        if (declared_on_known_feasible) {
            result.exit_code = kExitDeclaredOnFeasible;
            result.error = "infeasibility declared on a problem marked known-feasible";
        }
        return result;
    } catch (const ConfigError& e) {
        result.exit_code = kExitConfigError;
        result.error = e.what();
    } catch (const std::exception& e) {
        result.exit_code = kExitRuntimeError;
        result.error = e.what();
    }
    write_file(out_dir / "FAILED", result.error + "\n");
    result.files.push_back((out_dir / "FAILED").string());
    return result;
}

} // namespace comboo
