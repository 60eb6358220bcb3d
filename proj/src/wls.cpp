#include "cheby/wls.hpp"

#include <cmath>

#include <Eigen/Cholesky>

namespace cheby {

namespace {

Eigen::MatrixXcd basis_matrix(const Problem& p) {
  if (!p.basis().is_monomial()) return p.basis().matrix();
  const int m = p.m();
  const int n = p.dim();
  Eigen::MatrixXcd v(m, n);
  v.col(0).setOnes();
  for (int k = 1; k < n; ++k)
    v.col(k) = v.col(k - 1).cwiseProduct(p.nodes());
  return v;
}

}  // namespace

WlsSolution solve_wls(const Problem& problem, const WeightVector& w) {
  const int m = problem.m();

  WlsSolution sol{problem,
                  problem.basis().is_monomial()
                      ? weighted_arnoldi(problem, w)
                      : explicit_weighted_qr(problem, w),
                  {}, {}, 0.0, w};

  const Eigen::VectorXcd wf =
      sol.basis.sqrt_w.cast<Cplx>().cwiseProduct(problem.values());
  sol.atilde = sol.basis.Q.adjoint() * wf;
  const Eigen::VectorXcd fit = sol.basis.Q * sol.atilde;

  sol.r.resize(m);
  std::vector<int> off;
  for (int j = 0; j < m; ++j) {
    if (w[j] > 0.0)
      sol.r[j] = problem.values()[j] - fit[j] / sol.basis.sqrt_w[j];
    else
      off.push_back(j);
  }
  if (!off.empty()) {
    Eigen::VectorXcd v(off.size());
    for (size_t i = 0; i < off.size(); ++i) v[i] = problem.nodes()[off[i]];
    const Eigen::VectorXcd pv = evaluate_at(sol.basis, sol.atilde, v);
    for (size_t i = 0; i < off.size(); ++i)
      sol.r[off[i]] = problem.values()[off[i]] - pv[i];
  }

  double d = 0.0;
  for (int j = 0; j < m; ++j) d += w[j] * std::norm(sol.r[j]);
  sol.d = d;
  return sol;
}

Eigen::VectorXd dual_gradient(const WlsSolution& sol) {
  return sol.r.cwiseAbs2();
}

HessianFactor hessian_factor(const WlsSolution& sol) {
  const int m = sol.problem.m();
  const int n = sol.problem.dim();

  HessianFactor hf;
  for (int j = 0; j < m; ++j)
    if (sol.w_used[j] > 0.0) hf.support.push_back(j);
  const int s = static_cast<int>(hf.support.size());

  // K = Psi_W^H diag(r) on the support columns.
  Eigen::MatrixXcd kc(n, s);
  for (int c = 0; c < s; ++c) {
    const int j = hf.support[c];
    kc.col(c) = sol.basis.Q.row(j).adjoint() * sol.r[j];
  }
  if (sol.problem.mode() == Mode::Real) {
    hf.K = kc.real();
  } else {
    hf.K.resize(2 * n, s);
    hf.K.topRows(n) = kc.real();
    hf.K.bottomRows(n) = kc.imag();
  }
  return hf;
}

Eigen::MatrixXd hessian_dense(const WlsSolution& sol) {
  const Problem& p = sol.problem;
  const int m = p.m();
  const Eigen::MatrixXcd psi = basis_matrix(p);
  const Eigen::MatrixXcd g =
      psi.adjoint() * sol.w_used.values().asDiagonal() * psi;
  const Eigen::MatrixXcd ginv_pt =
      Eigen::LDLT<Eigen::MatrixXcd>(g).solve(psi.adjoint());
  const Eigen::MatrixXcd mid = psi * ginv_pt;  // Psi (Psi^H W Psi)^{-1} Psi^H

  Eigen::MatrixXd h(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      h(i, j) = -2.0 * std::real(std::conj(sol.r[i]) * mid(i, j) * sol.r[j]);
  return h;
}

}  // namespace cheby
