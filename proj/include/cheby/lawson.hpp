#pragma once

#include <optional>

#include "cheby/report.hpp"

namespace cheby {

struct LawsonConfig {
  int q = 1;               // weight-update exponent, 1 or 2
  int max_iter = 1000;
  double eps_stop = 1e-10;  // relative change of the stopping quantity
  double eps_w = 0.0;       // filtering threshold; 0 disables filtering
  std::optional<WeightVector> w0;  // default: uniform (must be positive)
};

/// One multiplicative reweighting w_j <- w_j |r_j|^q / sum_i w_i |r_i|^q.
WeightVector lawson_step(const WeightVector& w, const Eigen::VectorXcd& r,
                         int q);

/// Lawson's iteration. The stopping quantity is sqrt(d(w)) for q = 1 and
/// d(w) for q = 2; both runs record d(w) in the history. Filtered nodes are
/// removed for good (a multiplicative update cannot revive a zero weight).
SolveReport lawson_solve(const Problem& problem, const LawsonConfig& cfg);

}  // namespace cheby
