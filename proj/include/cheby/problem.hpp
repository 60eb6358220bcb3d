#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "cheby/errors.hpp"

namespace cheby {

using Cplx = std::complex<double>;

enum class Mode { Real, Complex };

enum class BuiltinProblem { f1, f2, g1, g2 };

/// Linear space of the approximant: span{1, x, ..., x^{n-1}} or the span of
/// explicitly tabulated basis columns psi_j(x_i).
class BasisSpec {
 public:
  static BasisSpec monomial(int dim);
  static BasisSpec explicit_matrix(Eigen::MatrixXcd psi);

  bool is_monomial() const { return !psi_.has_value(); }
  int dim() const { return dim_; }
  const Eigen::MatrixXcd& matrix() const;

 private:
  BasisSpec(int dim, std::optional<Eigen::MatrixXcd> psi);

  int dim_ = 0;
  std::optional<Eigen::MatrixXcd> psi_;
};

/// Point of the probability simplex: w >= 0, sum(w) = 1 (renormalized on
/// construction). Zero entries are allowed.
class WeightVector {
 public:
  explicit WeightVector(Eigen::VectorXd w);
  static WeightVector uniform(int m);

  const Eigen::VectorXd& values() const { return w_; }
  int size() const { return static_cast<int>(w_.size()); }
  double operator[](int i) const { return w_[i]; }

 private:
  Eigen::VectorXd w_;
};

/// Immutable sampled approximation problem: m nodes with values and a basis
/// of dimension n, m >= n+1.
class Problem {
 public:
  int m() const { return static_cast<int>(nodes_.size()); }
  int dim() const { return basis_.dim(); }
  const Eigen::VectorXcd& nodes() const { return nodes_; }
  const Eigen::VectorXcd& values() const { return values_; }
  Mode mode() const { return mode_; }
  const BasisSpec& basis() const { return basis_; }

 private:
  Problem(Eigen::VectorXcd nodes, Eigen::VectorXcd values, BasisSpec basis,
          Mode mode);

  friend Problem make_problem(Eigen::VectorXcd, Eigen::VectorXcd, BasisSpec,
                              Mode);
  friend Problem builtin_problem(BuiltinProblem, int);

  Eigen::VectorXcd nodes_;
  Eigen::VectorXcd values_;
  BasisSpec basis_;
  Mode mode_;
};

/// Validates and packages problem data. Duplicate detection compares node
/// pairs for exact equality; near-duplicates are the caller's responsibility.
Problem make_problem(Eigen::VectorXcd nodes, Eigen::VectorXcd values,
                     BasisSpec basis, Mode mode);

BuiltinProblem parse_builtin(std::string_view name);

/// The four built-in test problems on their fixed m = 2001 grids, with a
/// monomial basis of the given dimension. Grids are bit-reproducible pure
/// functions of the index. Complex roots use the principal branch. The g2
/// grid saturates tanh in double precision, so its trailing nodes coincide;
/// they enter the problem verbatim.
Problem builtin_problem(BuiltinProblem which, int dim);
Problem builtin_problem(std::string_view name, int dim);

}  // namespace cheby
