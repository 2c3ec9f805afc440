#pragma once

#include <Eigen/Core>

namespace d2d {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    double value = 0.0;
    Eigen::VectorXd x;
};

// Dense two-phase simplex: maximize c'x subject to Ax <= b, x >= 0.
// Pivot selection breaks ties by variable index, so identical inputs give
// bit-identical solutions.
LpResult solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

} // namespace d2d
