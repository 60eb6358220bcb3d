#include "cheby/orthobasis.hpp"

#include <cmath>

namespace cheby {

namespace {

// MGS removal of the components of t along the first k columns of Q, with a
// second pass; coefficients accumulate into coeffs(0..k-1).
void mgs_project(const Eigen::MatrixXcd& Q, int k, Eigen::VectorXcd& t,
                 Eigen::VectorXcd& coeffs) {
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < k; ++i) {
      Cplx c = Q.col(i).dot(t);  // conjugate dot
      t -= c * Q.col(i);
      coeffs[i] += c;
    }
  }
}

}  // namespace

WeightedBasis weighted_arnoldi(const Problem& problem, const WeightVector& w) {
  if (!problem.basis().is_monomial())
    throw InvalidConfig("weighted_arnoldi requires a monomial basis");
  const int m = problem.m();
  const int n = problem.dim();
  if (w.size() != m)
    throw InvalidWeights("weight vector length does not match node count");

  WeightedBasis basis;
  basis.source = WeightedBasis::Source::arnoldi;
  basis.sqrt_w = w.values().cwiseSqrt();
  basis.Q.resize(m, n);
  basis.H = Eigen::MatrixXcd::Zero(n + 1, n);

  Eigen::VectorXcd q0 = basis.sqrt_w.cast<Cplx>();
  basis.Q.col(0) = q0 / q0.norm();

  const Eigen::VectorXcd& x = problem.nodes();
  const double breakdown_tol =
      1e-14 * std::max(1.0, x.cwiseAbs().maxCoeff());

  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd t = x.cwiseProduct(basis.Q.col(k));
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(k + 1);
    mgs_project(basis.Q, k + 1, t, coeffs);
    basis.H.col(k).head(k + 1) = coeffs;
    const double hnext = t.norm();
    basis.H(k + 1, k) = hnext;
    if (k + 1 < n) {
      if (hnext <= breakdown_tol) throw BreakdownRankDeficient(k + 1);
      basis.Q.col(k + 1) = t / hnext;
    }
  }
  return basis;
}

WeightedBasis explicit_weighted_qr(const Problem& problem,
                                   const WeightVector& w) {
  if (problem.basis().is_monomial())
    throw InvalidConfig("explicit_weighted_qr requires an explicit basis");
  const int m = problem.m();
  const int n = problem.dim();
  if (w.size() != m)
    throw InvalidWeights("weight vector length does not match node count");

  WeightedBasis basis;
  basis.source = WeightedBasis::Source::explicit_qr;
  basis.sqrt_w = w.values().cwiseSqrt();
  basis.Q.resize(m, n);

  const Eigen::MatrixXcd& psi = problem.basis().matrix();
  double colscale = 0.0;
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd t =
        basis.sqrt_w.cast<Cplx>().cwiseProduct(psi.col(k));
    colscale = std::max(colscale, t.norm());
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(k);
    mgs_project(basis.Q, k, t, coeffs);
    const double norm = t.norm();
    if (norm <= 1e-12 * std::max(colscale, 1e-300))
      throw RankDeficientBasis(
          "weighted basis loses rank on the weight support");
    basis.Q.col(k) = t / norm;
  }
  return basis;
}

Eigen::VectorXcd evaluate_at(const WeightedBasis& basis,
                             const Eigen::VectorXcd& atilde,
                             const Eigen::VectorXcd& v) {
  if (basis.source != WeightedBasis::Source::arnoldi) throw NoRecurrence();
  const int n = static_cast<int>(basis.H.cols());
  if (atilde.size() != n)
    throw InvalidConfig("coefficient length does not match basis dimension");
  const Eigen::Index nv = v.size();

  // s_1 = ones; s_{k+1} = (v (.) s_k - sum_{i<=k} H(i,k) s_i) / H(k+1,k).
  Eigen::MatrixXcd s(nv, n);
  s.col(0).setOnes();
  for (int k = 0; k + 1 < n; ++k) {
    Eigen::VectorXcd t = v.cwiseProduct(s.col(k));
    for (int i = 0; i <= k; ++i) t -= basis.H(i, k) * s.col(i);
    const Cplx hnext = basis.H(k + 1, k);
    if (hnext == Cplx(0.0, 0.0)) throw DivisionByZeroSubdiagonal(k);
    s.col(k + 1) = t / hnext;
  }
  return s * atilde;
}

}  // namespace cheby
