#pragma once

#include <vector>

#include <Eigen/Core>

#include "cheby/errors.hpp"

namespace cheby {

/// Result of a dense two-phase simplex solve of
///   min c^T x  s.t.  A x = b,  x >= 0.
/// pi are the equality multipliers at the optimal basis (A_B^T pi = c_B).
struct SimplexResult {
  Eigen::VectorXd x;
  Eigen::VectorXd pi;
  std::vector<int> basis;
  double objective = 0.0;
  int iterations = 0;
};

/// Dense revised simplex, Dantzig pricing with Bland's rule as the
/// anti-cycling safeguard (switched in after a stall, switched out on
/// progress). Throws LpFailure on infeasible or unbounded input.
SimplexResult solve_standard_lp(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c);

}  // namespace cheby
