// Test-only oracles, kept independent of the library's solve paths: dense
// Householder QR, raw Vandermonde least squares, full-system Newton solves,
// and seeded random instance generation.
#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "cheby/ipm.hpp"
#include "cheby/problem.hpp"
#include "cheby/wls.hpp"

namespace oracles {

using cheby::Cplx;

inline Eigen::MatrixXcd vandermonde(const Eigen::VectorXcd& x, int n) {
  Eigen::MatrixXcd v(x.size(), n);
  v.col(0).setOnes();
  for (int k = 1; k < n; ++k) v.col(k) = v.col(k - 1).cwiseProduct(x);
  return v;
}

// Thin Q of sqrt(W) * Vandermonde via Householder QR.
inline Eigen::MatrixXcd dense_weighted_q(const Eigen::VectorXcd& x,
                                         const Eigen::VectorXd& w, int n) {
  const Eigen::Index m = x.size();
  Eigen::MatrixXcd a =
      w.cwiseSqrt().cast<Cplx>().asDiagonal() * vandermonde(x, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, n);
  return q;
}

// Weighted LS fit evaluated at v, straight through the normal equations in
// the monomial basis.
inline Eigen::VectorXcd dense_wls_fit(const Eigen::VectorXcd& x,
                                      const Eigen::VectorXcd& f,
                                      const Eigen::VectorXd& w, int n,
                                      const Eigen::VectorXcd& v) {
  const Eigen::MatrixXcd vx = vandermonde(x, n);
  const Eigen::MatrixXcd g = vx.adjoint() * w.asDiagonal() * vx;
  const Eigen::VectorXcd rhs = vx.adjoint() * (w.asDiagonal() * f);
  const Eigen::VectorXcd a = Eigen::LDLT<Eigen::MatrixXcd>(g).solve(rhs);
  return vandermonde(v, n) * a;
}

// Full (2s+1)-dimensional Newton system of the perturbed KKT conditions,
// solved densely. Unknown ordering matches [n_w; -n_y; -n_z].
inline cheby::NewtonDirection dense_newton(const Eigen::MatrixXd& neg_hess,
                                           const Eigen::VectorXd& w,
                                           const Eigen::VectorXd& z, double y,
                                           double mu,
                                           const Eigen::VectorXd& grad) {
  const Eigen::Index s = w.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * s + 1, 2 * s + 1);
  a.topLeftCorner(s, s) = neg_hess;
  a.block(0, s, s, 1).setOnes();
  a.block(0, s + 1, s, s).setIdentity();
  a.block(s, 0, 1, s).setOnes();
  a.block(s + 1, 0, s, s).setIdentity();
  a.bottomRightCorner(s, s) =
      -1.0 * w.cwiseQuotient(z).asDiagonal().toDenseMatrix();

  Eigen::VectorXd rhs(2 * s + 1);
  rhs.head(s) = -(-grad.array() - y - z.array());
  rhs[s] = -(w.sum() - 1.0);
  rhs.tail(s) = -(w.array() - mu / z.array());

  const Eigen::VectorXd sol = a.fullPivLu().solve(rhs);
  cheby::NewtonDirection dir;
  dir.n_w = sol.head(s);
  dir.n_y = -sol[s];
  dir.n_z = -sol.tail(s);
  return dir;
}

struct RandomInstance {
  cheby::Problem problem;
  int m;
  int n;
};

inline RandomInstance fixed_real_instance(std::mt19937_64& rng, int m, int n) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> xs;
  while (static_cast<int>(xs.size()) < m) {
    double c = unit(rng);
    bool ok = true;
    for (double e : xs) ok = ok && std::abs(e - c) > 1e-6;
    if (ok) xs.push_back(c);
  }
  std::sort(xs.begin(), xs.end());
  Eigen::VectorXcd x(m), f(m);
  for (int i = 0; i < m; ++i) {
    x[i] = xs[i];
    f[i] = unit(rng);
  }
  return {cheby::make_problem(x, f, cheby::BasisSpec::monomial(n),
                              cheby::Mode::Real),
          m, n};
}

inline RandomInstance random_real_instance(std::mt19937_64& rng, int max_m = 40,
                                           int max_n = 6) {
  std::uniform_int_distribution<int> pick_n(1, max_n);
  const int n = pick_n(rng);
  std::uniform_int_distribution<int> pick_m(n + 2, max_m);
  return fixed_real_instance(rng, pick_m(rng), n);
}

inline RandomInstance fixed_complex_instance(std::mt19937_64& rng, int m,
                                             int n) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Cplx> xs;
  while (static_cast<int>(xs.size()) < m) {
    Cplx c(unit(rng), unit(rng));
    bool ok = true;
    for (const Cplx& e : xs) ok = ok && std::abs(e - c) > 1e-6;
    if (ok) xs.push_back(c);
  }
  Eigen::VectorXcd x(m), f(m);
  for (int i = 0; i < m; ++i) {
    x[i] = xs[i];
    f[i] = Cplx(unit(rng), unit(rng));
  }
  return {cheby::make_problem(x, f, cheby::BasisSpec::monomial(n),
                              cheby::Mode::Complex),
          m, n};
}

inline RandomInstance random_complex_instance(std::mt19937_64& rng,
                                              int max_m = 40, int max_n = 6) {
  std::uniform_int_distribution<int> pick_n(1, max_n);
  const int n = pick_n(rng);
  std::uniform_int_distribution<int> pick_m(n + 2, max_m);
  return fixed_complex_instance(rng, pick_m(rng), n);
}

// Random interior weight vector.
inline cheby::WeightVector random_interior_w(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> u(0.2, 1.0);
  Eigen::VectorXd w(m);
  for (int i = 0; i < m; ++i) w[i] = u(rng);
  return cheby::WeightVector(w);
}

}  // namespace oracles
