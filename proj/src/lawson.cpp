#include "cheby/lawson.hpp"

#include <cassert>
#include <chrono>
#include <cmath>

namespace cheby {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Zeroes weights below eps_w and renormalizes; errors out if fewer than n+1
// nodes survive. Returns the removed mass.
double filter_weights(Eigen::VectorXd& w, double eps_w, int n) {
  if (eps_w <= 0.0) return 0.0;
  int support = 0;
  double removed = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < eps_w) {
      removed += w[i];
      w[i] = 0.0;
    } else {
      ++support;
    }
  }
  if (support < n + 1) throw AllWeightsFiltered(support, n + 1);
  w /= w.sum();
  return removed;
}

void finish_report(SolveReport& rep, const Problem& p, const WlsSolution& sol,
                   const Eigen::VectorXd& w) {
  rep.w = w;
  rep.r = sol.r;
  rep.d = sol.d;
  rep.eta = sol.r.cwiseAbs().maxCoeff();
  rep.eta_dual = std::sqrt(std::max(0.0, sol.d));
  rep.active_nodes = static_cast<int>((w.array() > 0.0).count());
  if (rep.eta > 0.0) {
    rep.reference_set = detect_reference_points(sol.r, rep.eta, 1e-6, p.mode());
    rep.rho_estimate = convergence_factor_estimate(sol.r, rep.reference_set);
  }
}

}  // namespace

WeightVector lawson_step(const WeightVector& w, const Eigen::VectorXcd& r,
                         int q) {
  if (q != 1 && q != 2) throw InvalidConfig("lawson update needs q in {1, 2}");
  if (w.size() != r.size())
    throw InvalidWeights("weight/residual length mismatch");
  Eigen::VectorXd next(w.size());
  double denom = 0.0;
  for (int j = 0; j < w.size(); ++j) {
    const double mag = std::abs(r[j]);
    next[j] = w[j] * (q == 1 ? mag : mag * mag);
    denom += next[j];
  }
  if (denom <= 0.0) throw ZeroDenominator();
  return WeightVector(next / denom);
}

SolveReport lawson_solve(const Problem& problem, const LawsonConfig& cfg) {
  if (cfg.q != 1 && cfg.q != 2)
    throw InvalidConfig("Lawson's iteration needs q in {1, 2}");
  if (!(cfg.eps_stop > 0.0)) throw InvalidConfig("eps_stop must be positive");
  if (cfg.max_iter < 1) throw InvalidConfig("max_iter must be positive");

  const auto t0 = Clock::now();
  const int m = problem.m();
  const int n = problem.dim();

  Eigen::VectorXd w =
      (cfg.w0 ? *cfg.w0 : WeightVector::uniform(m)).values();
  if (static_cast<int>(w.size()) != m)
    throw InvalidWeights("w0 length does not match the problem");
  if (w.minCoeff() <= 0.0)
    throw InvalidWeights("Lawson's iteration needs a strictly positive w0");

  SolveReport rep;
  rep.method = cfg.q == 1 ? "lawson-q1" : "lawson-q2";
  rep.status = SolveStatus::iter_capped;

  auto stop_quantity = [&](double d) {
    return cfg.q == 1 ? std::sqrt(std::max(0.0, d)) : d;
  };

  filter_weights(w, cfg.eps_w, n);
  WlsSolution sol = solve_wls(problem, WeightVector(w));
  rep.history.push_back(
      {0, sol.d, sol.r.cwiseAbs().maxCoeff(), w.maxCoeff(), std::nullopt});

  const double interp_tol =
      1e-13 * std::max(1.0, problem.values().cwiseAbs().maxCoeff());
  double prev = stop_quantity(sol.d);
  int k = 0;
  while (k < cfg.max_iter) {
    if (rep.history.back().r_inf <= interp_tol) {  // interpolation reached
      rep.status = SolveStatus::converged;
      break;
    }
    w = lawson_step(WeightVector(w), sol.r, cfg.q).values();
    const double removed = filter_weights(w, cfg.eps_w, n);
    const double d_before = sol.d;
    const double eta_before = rep.history.back().r_inf;
    sol = solve_wls(problem, WeightVector(w));
    // Monotone apart from what filtering may have taken out of the sum.
    assert(sol.d >= d_before - removed * eta_before * eta_before - 1e-12);
    (void)d_before;
    (void)eta_before;
    (void)removed;
    ++k;
    rep.history.push_back(
        {k, sol.d, sol.r.cwiseAbs().maxCoeff(), w.maxCoeff(), std::nullopt});
    const double cur = stop_quantity(sol.d);
    if (std::abs(prev - cur) / prev <= cfg.eps_stop) {
      rep.status = SolveStatus::converged;
      break;
    }
    prev = cur;
  }

  rep.iterations = k;
  finish_report(rep, problem, sol, w);
  rep.wall_ms = ms_since(t0);
  return rep;
}

}  // namespace cheby
