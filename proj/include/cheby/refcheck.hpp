#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cheby/problem.hpp"
#include "cheby/wls.hpp"

namespace cheby {

/// Nodes where the residual magnitude attains the max-level eta up to a
/// relative tolerance. In real mode, residual signs are recorded so
/// alternation can be checked.
struct ReferenceSet {
  std::vector<int> indices;        // ascending node indices
  std::vector<double> magnitudes;  // |r_i| at those indices
  std::vector<int> signs;          // +1/-1 per member; empty in complex mode
  double eta = 0.0;
  double tol_used = 0.0;
};

struct AlternationResult {
  bool ok = false;
  int alternating_run = 0;
};

/// Minimax level and coefficients from the real-case LP, solved on an
/// orthogonalized basis by a dense simplex method.
struct LpSolution {
  double eta = 0.0;
  Eigen::VectorXd atilde;          // coefficients in the orthonormal basis
  std::vector<int> basic_indices;  // node indices active in the final basis
  Eigen::VectorXd multipliers;     // t = y_+ - y_- at those nodes
  Eigen::VectorXd residual;        // length-m residual of the returned fit
  WeightedBasis basis;             // uniform-weight basis used by the LP
  int iterations = 0;
};

ReferenceSet detect_reference_points(const Eigen::VectorXcd& r, double eta,
                                     double tol, Mode mode);

/// ok iff the longest sign-alternating subsequence (in node order) among the
/// members has length >= n+1.
AlternationResult check_alternation(const ReferenceSet& refset, int n);

/// max_j w_j (eta - |r_j|) / eta; zero at a dual optimum.
double check_complementary_slackness(const Eigen::VectorXd& w,
                                     const Eigen::VectorXcd& r, double eta);

/// max |r_i| over non-members divided by eta; empty if every node is a
/// member. Governs the linear rate of Lawson's iteration.
std::optional<double> convergence_factor_estimate(const Eigen::VectorXcd& r,
                                                  const ReferenceSet& refset);

/// Exact minimax level for real problems with a monomial basis, via the
/// equivalent LP in standard form.
LpSolution lp_reference(const Problem& problem, int m_cap = 5000);

/// Max relative discrepancy between the analytic gradient (Hessian) and
/// central differences of d (of the gradient) along simplex-tangent
/// directions. Requires strictly positive w.
double fd_gradient_check(const Problem& problem, const WeightVector& w,
                         double h);
double fd_hessian_check(const Problem& problem, const WeightVector& w,
                        double h);

/// Max of d(w) over a simplex lattice with the given spacing; m <= 4 only.
double brute_force_dual(const Problem& problem, double grid_resolution);

}  // namespace cheby
