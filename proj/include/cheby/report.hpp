#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cheby/problem.hpp"
#include "cheby/refcheck.hpp"

namespace cheby {

enum class SolveStatus { converged, iter_capped };

struct HistoryRow {
  int iter = 0;
  double d = 0.0;      // dual objective at this iterate
  double r_inf = 0.0;  // max residual magnitude over the full original grid
  double w_inf = 0.0;
  std::optional<double> kkt_inf;  // empty for Lawson runs
};

/// Outcome of a Lawson or interior-point run. Weights and residuals are
/// reported over the original node indices; filtered nodes carry zero weight
/// but their residuals stay observable through the recurrence.
struct SolveReport {
  std::string method;
  SolveStatus status = SolveStatus::iter_capped;
  int iterations = 0;
  std::vector<HistoryRow> history;  // length = iterations + 1
  Eigen::VectorXd w;                // final weights, length m
  Eigen::VectorXcd r;               // final residual, length m
  double eta = 0.0;                 // ||r||_inf at the final iterate
  double eta_dual = 0.0;            // sqrt(d(w_final))
  double d = 0.0;
  ReferenceSet reference_set;
  std::optional<double> rho_estimate;
  int active_nodes = 0;  // indices surviving with positive weight
  double wall_ms = 0.0;
};

inline const char* to_string(SolveStatus s) {
  return s == SolveStatus::converged ? "converged" : "iter-capped";
}

}  // namespace cheby
