#pragma once

#include <vector>

#include <Eigen/Core>

#include "cheby/orthobasis.hpp"
#include "cheby/problem.hpp"

namespace cheby {

/// Solution of the weighted least-squares inner problem
///   d(w) = min_a sum_j w_j |f_j - p(x_j)|^2.
/// The residual r covers all original nodes; at zero-weight nodes it is
/// obtained from the stored recurrence, so the max error over the full grid
/// stays observable after filtering.
struct WlsSolution {
  Problem problem;
  WeightedBasis basis;
  Eigen::VectorXcd atilde;  // coefficients in the orthonormal basis
  Eigen::VectorXcd r;       // length m residual over all original nodes
  double d = 0.0;           // sum_j w_j |r_j|^2
  WeightVector w_used;
};

/// Real factor K of the dual Hessian, columns restricted to the weight
/// support: -hessian = 2 * W^{-1/2} K^T K W^{-1/2} on the support. K has n
/// rows in real mode and 2n rows (real atop imaginary block) in complex mode.
struct HessianFactor {
  Eigen::MatrixXd K;
  std::vector<int> support;  // ascending original indices with w > 0
};

WlsSolution solve_wls(const Problem& problem, const WeightVector& w);

/// Gradient of the dual objective at w > 0: elementwise |r_j|^2.
Eigen::VectorXd dual_gradient(const WlsSolution& sol);

HessianFactor hessian_factor(const WlsSolution& sol);

/// Dense m x m dual Hessian straight from the basis matrix and the normal
/// equations. Negative semidefinite. Intended for small instances
/// (diagnostics and cross-checks), not the solver path.
Eigen::MatrixXd hessian_dense(const WlsSolution& sol);

}  // namespace cheby
