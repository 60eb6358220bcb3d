#pragma once

#include <Eigen/Core>

#include "cheby/problem.hpp"

namespace cheby {

/// Orthonormal basis of the weighted space span(sqrt(W) * Psi), Q^H Q = I.
/// For Arnoldi-built bases, H holds the upper-Hessenberg recurrence
/// x (.) Q_k = sum_{i<=k+1} H(i,k) Q_i, which allows evaluation of the fitted
/// function at arbitrary new nodes without ever forming a Vandermonde matrix.
struct WeightedBasis {
  enum class Source { arnoldi, explicit_qr };

  Eigen::MatrixXcd Q;      // m x n, orthonormal columns
  Eigen::MatrixXcd H;      // (n+1) x n recurrence; empty for explicit_qr
  Eigen::VectorXd sqrt_w;  // length m, sqrt of the construction weights
  Source source = Source::arnoldi;
};

/// Arnoldi process on the Krylov space K_n(diag(x), sqrt(w)) with modified
/// Gram-Schmidt and one reorthogonalization pass. Requires a monomial basis.
WeightedBasis weighted_arnoldi(const Problem& problem, const WeightVector& w);

/// Thin QR of sqrt(W) * Psi for an explicit basis matrix. No recurrence is
/// stored, so evaluate_at is unavailable for the result.
WeightedBasis explicit_weighted_qr(const Problem& problem,
                                   const WeightVector& w);

/// Evaluates the fitted function with coefficients atilde (in the orthonormal
/// basis) at new nodes v by running the stored recurrence forward from the
/// all-ones column. At an original node x_j with w_j > 0 the result equals
/// (Q * atilde)_j / sqrt(w_j).
Eigen::VectorXcd evaluate_at(const WeightedBasis& basis,
                             const Eigen::VectorXcd& atilde,
                             const Eigen::VectorXcd& v);

}  // namespace cheby
