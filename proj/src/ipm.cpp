#include "cheby/ipm.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Cholesky>

namespace cheby {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

Eigen::VectorXd kkt_residual(const DualState& state,
                             const Eigen::VectorXd& grad) {
  const Eigen::Index s = state.w.size();
  if (grad.size() != s || state.z.size() != s)
    throw InvalidConfig("kkt_residual: inconsistent lengths");
  Eigen::VectorXd k(2 * s + 1);
  k.head(s) = -grad.array() - state.y - state.z.array();
  k.segment(s, s) = state.w.cwiseProduct(state.z).array() - state.mu;
  k[2 * s] = state.w.sum() - 1.0;
  return k;
}

Eigen::VectorXd smw_solve(const HessianFactor& kf, const Eigen::VectorXd& w,
                          const Eigen::VectorXd& z,
                          const Eigen::VectorXd& rhs) {
  const Eigen::Index s = w.size();
  if (z.size() != s || rhs.size() != s || kf.K.cols() != s)
    throw InvalidConfig("smw_solve: inconsistent lengths");
  if (w.minCoeff() <= 0.0 || z.minCoeff() <= 0.0)
    throw InvalidConfig("smw_solve needs strictly positive w and z");

  // (Sigma + 2 W^{-1/2} K^T K W^{-1/2})^{-1}
  //   = Sigma^{-1} - 2 (Sigma Z)^{-1/2} K^T (I + 2 K Z^{-1} K^T)^{-1}
  //                                       K (Sigma Z)^{-1/2},
  // with Sigma = W^{-1} Z and (Sigma Z)^{-1/2} = diag(sqrt(w)/z).
  const Eigen::VectorXd sigma_inv = w.cwiseQuotient(z);
  const Eigen::VectorXd sz = w.cwiseSqrt().cwiseQuotient(z);

  const Eigen::Index nr = kf.K.rows();
  Eigen::MatrixXd inner = Eigen::MatrixXd::Identity(nr, nr);
  inner.noalias() +=
      2.0 * kf.K * z.cwiseInverse().asDiagonal() * kf.K.transpose();
  Eigen::LLT<Eigen::MatrixXd> llt(inner);
  if (llt.info() != Eigen::Success) throw IndefiniteSystem();

  const Eigen::VectorXd t = kf.K * sz.cwiseProduct(rhs);
  const Eigen::VectorXd u = llt.solve(t);
  return sigma_inv.cwiseProduct(rhs) -
         2.0 * sz.cwiseProduct(kf.K.transpose() * u);
}

NewtonDirection newton_direction(const DualState& state,
                                 const WlsSolution& sol,
                                 const HessianFactor& kf, double mu) {
  const Eigen::Index s = state.w.size();
  if (static_cast<Eigen::Index>(kf.support.size()) != s)
    throw InvalidConfig("newton_direction: state/support size mismatch");

  Eigen::VectorXd grad(s);
  for (Eigen::Index i = 0; i < s; ++i)
    grad[i] = std::norm(sol.r[kf.support[i]]);

  const Eigen::VectorXd h1 =
      -grad.array() - state.y - mu * state.w.cwiseInverse().array();
  const double h2 = state.w.sum() - 1.0;

  const Eigen::VectorXd v_e =
      smw_solve(kf, state.w, state.z, Eigen::VectorXd::Ones(s));
  const Eigen::VectorXd v_h = smw_solve(kf, state.w, state.z, h1);

  NewtonDirection dir;
  dir.n_y = (v_h.sum() - h2) / v_e.sum();
  dir.n_w = dir.n_y * v_e - v_h;
  dir.n_z = -state.z.array() + mu * state.w.cwiseInverse().array() -
            (state.z.cwiseQuotient(state.w).cwiseProduct(dir.n_w)).array();
  return dir;
}

std::pair<double, double> step_lengths(const Eigen::VectorXd& w,
                                       const Eigen::VectorXd& z,
                                       const Eigen::VectorXd& n_w,
                                       const Eigen::VectorXd& n_z,
                                       double tau) {
  auto cap = [tau](const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double alpha = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
      if (dv[i] < 0.0) alpha = std::min(alpha, tau * v[i] / -dv[i]);
    return alpha;
  };
  return {cap(w, n_w), cap(z, n_z)};
}

double update_mu(const Eigen::VectorXd& w, const Eigen::VectorXd& z) {
  const double avg = w.dot(z) / static_cast<double>(w.size());
  const double xi = w.cwiseProduct(z).minCoeff() / avg;
  const double sigma =
      0.1 * std::pow(std::min((1.0 - xi) / (20.0 * xi), 2.0), 3.0);
  return sigma * avg;
}

SolveReport ipm_solve(const Problem& problem, const IpmConfig& cfg) {
  if (!(cfg.tau > 0.0 && cfg.tau < 1.0))
    throw InvalidConfig("tau must lie in (0, 1)");
  if (!(cfg.mu0 > 0.0)) throw InvalidConfig("mu0 must be positive");
  if (cfg.k_max < 1) throw InvalidConfig("k_max must be positive");

  const auto t0 = Clock::now();
  const int m = problem.m();
  const int n = problem.dim();

  Eigen::VectorXd w0 = (cfg.w0 ? *cfg.w0 : WeightVector::uniform(m)).values();
  if (static_cast<int>(w0.size()) != m)
    throw InvalidWeights("w0 length does not match the problem");
  if (w0.minCoeff() <= 0.0)
    throw InvalidWeights("interior start needs a strictly positive w0");

  std::vector<int> active(m);
  for (int i = 0; i < m; ++i) active[i] = i;
  Eigen::VectorXd w = w0;
  Eigen::VectorXd z = cfg.z0_mode == IpmConfig::Z0Mode::ones
                          ? Eigen::VectorXd::Ones(m)
                          : Eigen::VectorXd(cfg.mu0 * w.cwiseInverse());
  double y = 0.0;
  double mu = cfg.mu0;

  SolveReport rep;
  rep.method = "ipm";
  rep.status = SolveStatus::iter_capped;

  auto embed = [&](const Eigen::VectorXd& wa) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
    for (size_t i = 0; i < active.size(); ++i) full[active[i]] = wa[i];
    return full;
  };

  std::optional<WlsSolution> sol;
  double d_prev = -1.0;
  int k = 0;
  for (;; ++k) {
    if (cfg.eps_w > 0.0) {
      std::vector<int> keep;
      for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] >= cfg.eps_w) keep.push_back(static_cast<int>(i));
      if (static_cast<int>(keep.size()) < n + 1)
        throw AllWeightsFiltered(static_cast<int>(keep.size()), n + 1);
      if (static_cast<int>(keep.size()) < w.size()) {
        Eigen::VectorXd wk(keep.size()), zk(keep.size());
        std::vector<int> ak(keep.size());
        for (size_t i = 0; i < keep.size(); ++i) {
          wk[i] = w[keep[i]];
          zk[i] = z[keep[i]];
          ak[i] = active[keep[i]];
        }
        w = wk / wk.sum();
        z = zk;
        active = ak;
      }
    }

    sol.emplace(solve_wls(problem, WeightVector(embed(w))));

    Eigen::VectorXd grad(active.size());
    for (size_t i = 0; i < active.size(); ++i)
      grad[i] = std::norm(sol->r[active[i]]);
    if (k == 0) y = -grad.maxCoeff();

    DualState state{w, z, y, mu, k};
    const double kkt_inf = kkt_residual(state, grad).cwiseAbs().maxCoeff();
    // The KKT norm scales with the dual gradient; an absolute threshold
    // would trip long before optimality on problems whose dual value is
    // tiny, so the test is taken relative to the gradient magnitude.
    const double kkt_scale = grad.maxCoeff();
    rep.history.push_back(
        {k, sol->d, sol->r.cwiseAbs().maxCoeff(), w.maxCoeff(), kkt_inf});

    if (rep.history.back().r_inf <=
        1e-13 * std::max(1.0, problem.values().cwiseAbs().maxCoeff())) {
      rep.status = SolveStatus::converged;  // interpolation-feasible data
      break;
    }
    if (k > 0 && d_prev > 0.0 &&
        std::abs(sol->d - d_prev) / d_prev < cfg.eps_d) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (kkt_inf < cfg.eps_K * kkt_scale) {
      rep.status = SolveStatus::converged;
      break;
    }
    if (k >= cfg.k_max) {
      rep.status = SolveStatus::iter_capped;
      break;
    }

    const HessianFactor kf = hessian_factor(*sol);
    const NewtonDirection dir = newton_direction(state, *sol, kf, mu);
    const auto [alpha_w, alpha_z] =
        step_lengths(w, z, dir.n_w, dir.n_z, cfg.tau);

    w += alpha_w * dir.n_w;
    y += alpha_z * dir.n_y;
    z += alpha_z * dir.n_z;
    w /= w.sum();  // the Newton step keeps sum(w)=1 only to first order

    if (!w.allFinite() || !z.allFinite() || !std::isfinite(y))
      throw NonFiniteIterate(k);

    // The adaptive rule returns 0 whenever the products w_i z_i are uniform
    // (notably at the very first iterate); keep the barrier alive. The floor
    // sits far below any meaningful duality measure so the endgame weight
    // collapse is never frozen.
    mu = std::max({update_mu(w, z), 1e-2 * mu, 1e-30});
    d_prev = sol->d;
  }

  rep.iterations = k;
  rep.w = embed(w);
  rep.r = sol->r;
  rep.d = sol->d;
  rep.eta = sol->r.cwiseAbs().maxCoeff();
  rep.eta_dual = std::sqrt(std::max(0.0, sol->d));
  rep.active_nodes = static_cast<int>(active.size());
  if (rep.eta > 0.0) {
    rep.reference_set =
        detect_reference_points(sol->r, rep.eta, 1e-6, problem.mode());
    rep.rho_estimate = convergence_factor_estimate(sol->r, rep.reference_set);
  }
  rep.wall_ms = ms_since(t0);
  return rep;
}

}  // namespace cheby
