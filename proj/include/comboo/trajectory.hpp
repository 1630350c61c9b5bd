#pragma once

#include <Eigen/Core>

namespace comboo {

/// One logged round (initialization or optimization). Ground-truth values are
/// recorded for metrics; the optimizer itself only ever sees the noisy ones.
struct TrajectoryRecord {
    int t = 0;              // 1-based, contiguous across init + optimization
    bool is_init = false;
    bool declared = false;  // infeasibility declaration fired this round
    Eigen::VectorXd x;      // empty if declared without querying
    Eigen::VectorXd f_true;
    Eigen::VectorXd g_true;
    Eigen::VectorXd y_f;
    Eigen::VectorXd y_g;
    Eigen::VectorXd theta;  // empty for init / random-search rounds
    double beta = 0.0;
    bool feasible_true = false;
    int feasible_set_size = 0;
    double max_min_ucb = 0.0; // auxiliary problem value (+inf when c == 0)

    bool queried() const { return x.size() > 0; }
};

} // namespace comboo
