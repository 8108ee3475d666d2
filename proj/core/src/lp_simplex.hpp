#pragma once

// Dense two-phase simplex for the small linear programs that arise after
// reducing basis pursuit to an independent row system.

#include <Eigen/Dense>

namespace boolsketch::detail {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// min c^T x  s.t.  A x = b, x >= 0. Bland's rule; intended for a few hundred
/// variables at most.
LpSolution solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             const Eigen::VectorXd& c);

}  // namespace boolsketch::detail
