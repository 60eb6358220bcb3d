#pragma once

#include <optional>
#include <utility>

#include "cheby/report.hpp"
#include "cheby/wls.hpp"

namespace cheby {

/// Interior iterate of the dual maximization: weights w on the simplex,
/// simplex-equality multiplier y, bound multipliers z, barrier parameter mu.
/// Vectors run over the active (unfiltered) node set.
struct DualState {
  Eigen::VectorXd w;
  Eigen::VectorXd z;
  double y = 0.0;
  double mu = 0.0;
  int k = 0;
};

struct NewtonDirection {
  Eigen::VectorXd n_w;
  Eigen::VectorXd n_z;
  double n_y = 0.0;
};

struct IpmConfig {
  double tau = 0.99;    // fraction-to-boundary factor
  double mu0 = 1e-5;    // initial barrier parameter
  double eps_d = 1e-10;   // relative dual-change stopping tolerance
  double eps_K = 1e-10;   // KKT-residual stopping tolerance
  int k_max = 200;
  double eps_w = 0.0;   // filtering threshold; 0 disables filtering
  enum class Z0Mode { ones, mu_over_w } z0_mode = Z0Mode::ones;
  std::optional<WeightVector> w0;  // default: uniform
};

/// Residual of the perturbed KKT system, stacked as
/// [-grad - y e - z ; w (.) z - mu e ; sum(w) - 1].
Eigen::VectorXd kkt_residual(const DualState& state,
                             const Eigen::VectorXd& grad);

/// Applies (-hessian + Sigma)^{-1} with Sigma = diag(z/w) through the
/// low-rank identity: one SPD factorization of I + 2 K Z^{-1} K^T.
Eigen::VectorXd smw_solve(const HessianFactor& kf, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& z,
                          const Eigen::VectorXd& rhs);

/// Newton direction of the perturbed KKT system after eliminating n_z.
NewtonDirection newton_direction(const DualState& state, const WlsSolution& sol,
                                 const HessianFactor& kf, double mu);

/// Fraction-to-boundary step lengths for w and z.
std::pair<double, double> step_lengths(const Eigen::VectorXd& w,
                                       const Eigen::VectorXd& z,
                                       const Eigen::VectorXd& n_w,
                                       const Eigen::VectorXd& n_z, double tau);

/// Adaptive barrier value sigma * (w^T z)/m from the centrality measure;
/// returns 0 when the products w_i z_i are all equal.
double update_mu(const Eigen::VectorXd& w, const Eigen::VectorXd& z);

SolveReport ipm_solve(const Problem& problem, const IpmConfig& cfg);

}  // namespace cheby
