#include "cheby/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/QR>

namespace cheby {

BasisSpec::BasisSpec(int dim, std::optional<Eigen::MatrixXcd> psi)
    : dim_(dim), psi_(std::move(psi)) {}

BasisSpec BasisSpec::monomial(int dim) {
  if (dim < 1) throw InvalidConfig("basis dimension must be positive");
  return BasisSpec(dim, std::nullopt);
}

BasisSpec BasisSpec::explicit_matrix(Eigen::MatrixXcd psi) {
  if (psi.cols() < 1 || psi.rows() < 1)
    throw InvalidConfig("explicit basis matrix must be nonempty");
  const int dim = static_cast<int>(psi.cols());
  return BasisSpec(dim, std::move(psi));
}

const Eigen::MatrixXcd& BasisSpec::matrix() const {
  if (!psi_) throw InvalidConfig("monomial basis has no explicit matrix");
  return *psi_;
}

WeightVector::WeightVector(Eigen::VectorXd w) : w_(std::move(w)) {
  if (w_.size() == 0) throw InvalidWeights("empty weight vector");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] < 0.0)
      throw InvalidWeights("weights must be finite and nonnegative");
    sum += w_[i];
  }
  if (sum <= 0.0) throw InvalidWeights("weights must not all vanish");
  w_ /= sum;
}

WeightVector WeightVector::uniform(int m) {
  return WeightVector(Eigen::VectorXd::Constant(m, 1.0 / m));
}

namespace {

void validate_common(const Eigen::VectorXcd& nodes,
                     const Eigen::VectorXcd& values, const BasisSpec& basis,
                     Mode mode) {
  if (nodes.size() != values.size())
    throw InvalidConfig("nodes and values must have equal length");
  const int m = static_cast<int>(nodes.size());
  const int n = basis.dim();
  if (m < n + 1) throw TooFewNodes(m, n);
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(nodes[i].real()) || !std::isfinite(nodes[i].imag()) ||
        !std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw NonFiniteData();
  }
  if (mode == Mode::Real) {
    for (int i = 0; i < m; ++i)
      if (nodes[i].imag() != 0.0 || values[i].imag() != 0.0)
        throw NonRealData();
  }
  if (!basis.is_monomial()) {
    const Eigen::MatrixXcd& psi = basis.matrix();
    if (psi.rows() != m)
      throw InvalidConfig("explicit basis matrix must have m rows");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(psi);
    if (qr.rank() < basis.dim()) throw RankDeficientBasis();
  }
}

void check_distinct(const Eigen::VectorXcd& nodes) {
  const int m = static_cast<int>(nodes.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (nodes[a].real() != nodes[b].real())
      return nodes[a].real() < nodes[b].real();
    return nodes[a].imag() < nodes[b].imag();
  });
  for (int k = 0; k + 1 < m; ++k) {
    int a = order[k], b = order[k + 1];
    if (nodes[a] == nodes[b])
      throw DuplicateNodes(std::min(a, b), std::max(a, b));
  }
}

}  // namespace

Problem::Problem(Eigen::VectorXcd nodes, Eigen::VectorXcd values,
                 BasisSpec basis, Mode mode)
    : nodes_(std::move(nodes)),
      values_(std::move(values)),
      basis_(std::move(basis)),
      mode_(mode) {}

Problem make_problem(Eigen::VectorXcd nodes, Eigen::VectorXcd values,
                     BasisSpec basis, Mode mode) {
  validate_common(nodes, values, basis, mode);
  check_distinct(nodes);
  return Problem(std::move(nodes), std::move(values), std::move(basis), mode);
}

BuiltinProblem parse_builtin(std::string_view name) {
  if (name == "f1") return BuiltinProblem::f1;
  if (name == "f2") return BuiltinProblem::f2;
  if (name == "g1") return BuiltinProblem::g1;
  if (name == "g2") return BuiltinProblem::g2;
  throw UnknownProblem(std::string(name));
}

Problem builtin_problem(BuiltinProblem which, int dim) {
  constexpr int m = 2001;
  Eigen::VectorXcd x(m), f(m);
  Mode mode = Mode::Real;
  switch (which) {
    case BuiltinProblem::f1:
      for (int i = 1; i <= m; ++i) {
        double xi = -1.0 + (i - 1) / 1000.0;
        x[i - 1] = xi;
        f[i - 1] = std::sin(20.0 * std::abs(xi) * xi);
      }
      break;
    case BuiltinProblem::f2:
      for (int i = 1; i <= m; ++i) {
        double xi = -1.0 + (i - 1) / 1000.0;
        x[i - 1] = xi;
        f[i - 1] = 1.0 / (1.0 + 25.0 * xi * xi);
      }
      break;
    case BuiltinProblem::g1:
      mode = Mode::Complex;
      for (int k = 1; k <= m; ++k) {
        double theta = M_PI * (-0.5 + (k - 1) / 2000.0);
        Cplx z = std::exp(Cplx(0.0, theta));
        x[k - 1] = z;
        f[k - 1] = 1.0 / std::sqrt(2.0 * z + 1.0);
      }
      break;
    case BuiltinProblem::g2:
      mode = Mode::Complex;
      for (int k = 1; k <= m; ++k) {
        double theta = M_PI / 4.0 * std::tanh(-12.0 + 24.0 * (k - 1) / 1000.0);
        Cplx z = std::exp(Cplx(0.0, theta));
        x[k - 1] = z;
        Cplx z4 = z * z * z * z;
        f[k - 1] = std::sqrt(1.0 + z4);
      }
      break;
  }
  BasisSpec basis = BasisSpec::monomial(dim);
  validate_common(x, f, basis, mode);
  // tanh saturation makes trailing g2 nodes coincide; distinctness is not
  // enforced for the built-in grids.
  return Problem(std::move(x), std::move(f), std::move(basis), mode);
}

Problem builtin_problem(std::string_view name, int dim) {
  return builtin_problem(parse_builtin(name), dim);
}

}  // namespace cheby
