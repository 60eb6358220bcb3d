#include "cheby/refcheck.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Cholesky>

#include "cheby/orthobasis.hpp"
#include "cheby/simplex.hpp"

namespace cheby {

ReferenceSet detect_reference_points(const Eigen::VectorXcd& r, double eta,
                                     double tol, Mode mode) {
  if (!(eta > 0.0)) throw InvalidConfig("reference detection needs eta > 0");
  ReferenceSet rs;
  rs.eta = eta;
  rs.tol_used = tol;
  const double cut = (1.0 - tol) * eta;
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    const double mag = std::abs(r[i]);
    if (mag >= cut) {
      rs.indices.push_back(i);
      rs.magnitudes.push_back(mag);
      if (mode == Mode::Real) rs.signs.push_back(r[i].real() >= 0.0 ? 1 : -1);
    }
  }
  return rs;
}

AlternationResult check_alternation(const ReferenceSet& refset, int n) {
  AlternationResult res;
  if (refset.signs.empty()) return res;
  // Longest alternating subsequence of a sign pattern = number of blocks of
  // equal consecutive signs.
  int run = 1;
  for (size_t k = 1; k < refset.signs.size(); ++k)
    if (refset.signs[k] != refset.signs[k - 1]) ++run;
  res.alternating_run = run;
  res.ok = run >= n + 1;
  return res;
}

double check_complementary_slackness(const Eigen::VectorXd& w,
                                     const Eigen::VectorXcd& r, double eta) {
  if (!(eta > 0.0)) throw InvalidConfig("slackness check needs eta > 0");
  double worst = 0.0;
  for (int j = 0; j < w.size(); ++j)
    worst = std::max(worst, w[j] * (eta - std::abs(r[j])) / eta);
  return worst;
}

std::optional<double> convergence_factor_estimate(const Eigen::VectorXcd& r,
                                                  const ReferenceSet& refset) {
  std::vector<char> member(r.size(), 0);
  for (int i : refset.indices) member[i] = 1;
  double worst = -1.0;
  for (int i = 0; i < static_cast<int>(r.size()); ++i)
    if (!member[i]) worst = std::max(worst, std::abs(r[i]));
  if (worst < 0.0) return std::nullopt;
  return worst / refset.eta;
}

LpSolution lp_reference(const Problem& problem, int m_cap) {
  if (problem.mode() != Mode::Real)
    throw InvalidConfig("the LP route applies to real problems only");
  if (!problem.basis().is_monomial())
    throw InvalidConfig("lp_reference requires a monomial basis");
  const int m = problem.m();
  const int n = problem.dim();
  if (m > m_cap)
    throw CapExceeded("problem size " + std::to_string(m) +
                      " exceeds the LP cap " + std::to_string(m_cap));

  LpSolution lp;
  lp.basis = weighted_arnoldi(problem, WeightVector::uniform(m));
  // Rows of phi are the basis functions evaluated at the nodes:
  // phi(j,k) = Q(j,k)/sqrt(w_j) with uniform w.
  const Eigen::MatrixXd phi = std::sqrt(double(m)) * lp.basis.Q.real();
  const Eigen::VectorXd f = problem.values().real();

  // Standard-form dual:  min [f;-f]^T y  s.t.  phi^T (y+ - y-) = 0,
  // -e^T (y+ + y-) = -1, y >= 0. The equality multipliers at the optimum are
  // [atilde; eta] of the primal minimax program.
  Eigen::MatrixXd a(n + 1, 2 * m);
  a.topLeftCorner(n, m) = phi.transpose();
  a.topRightCorner(n, m) = -phi.transpose();
  a.row(n).setConstant(-1.0);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  b[n] = -1.0;
  Eigen::VectorXd c(2 * m);
  c.head(m) = f;
  c.tail(m) = -f;

  const SimplexResult sr = solve_standard_lp(a, b, c);
  lp.eta = -sr.objective;
  lp.atilde = sr.pi.head(n);
  lp.iterations = sr.iterations;

  std::vector<std::pair<int, double>> active;  // node -> t value
  for (int i = 0; i < n + 1; ++i) {
    const int col = sr.basis[i];
    const int node = col % m;
    const double t = (col < m) ? sr.x[col] : -sr.x[col];
    active.emplace_back(node, t);
  }
  std::sort(active.begin(), active.end());
  lp.multipliers.resize(active.size());
  for (size_t i = 0; i < active.size(); ++i) {
    lp.basic_indices.push_back(active[i].first);
    lp.multipliers[i] = active[i].second;
  }

  lp.residual = f - phi * lp.atilde;
  return lp;
}

namespace {

// Deterministic simplex-tangent directions with unit max-norm.
std::vector<Eigen::VectorXd> tangent_directions(int m, int count,
                                                unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::VectorXd> dirs;
  for (int d = 0; d < count; ++d) {
    Eigen::VectorXd v(m);
    for (int i = 0; i < m; ++i) v[i] = gauss(rng);
    v.array() -= v.mean();
    const double scale = v.cwiseAbs().maxCoeff();
    if (scale <= 0.0) {
      --d;
      continue;
    }
    dirs.push_back(v / scale);
  }
  return dirs;
}

double effective_step(const Eigen::VectorXd& w, double h) {
  return std::min(h, 0.49 * w.minCoeff());
}

}  // namespace

double fd_gradient_check(const Problem& problem, const WeightVector& w,
                         double h) {
  const int m = problem.m();
  if (w.values().minCoeff() <= 0.0)
    throw InvalidWeights("finite-difference checks need strictly positive w");
  const WlsSolution sol = solve_wls(problem, w);
  const Eigen::VectorXd g = dual_gradient(sol);
  const double hh = effective_step(w.values(), h);

  double worst = 0.0, scale = 0.0;
  for (const auto& dir : tangent_directions(m, 8, 0x8ade5u)) {
    const double an = g.dot(dir);
    const double dp = solve_wls(problem, WeightVector(w.values() + hh * dir)).d;
    const double dm = solve_wls(problem, WeightVector(w.values() - hh * dir)).d;
    const double fd = (dp - dm) / (2.0 * hh);
    worst = std::max(worst, std::abs(fd - an));
    scale = std::max({scale, std::abs(an), std::abs(fd)});
  }
  return worst / std::max(scale, 1e-14 * std::max(1.0, g.cwiseAbs().maxCoeff()));
}

double fd_hessian_check(const Problem& problem, const WeightVector& w,
                        double h) {
  const int m = problem.m();
  if (w.values().minCoeff() <= 0.0)
    throw InvalidWeights("finite-difference checks need strictly positive w");
  const WlsSolution sol = solve_wls(problem, w);
  const Eigen::MatrixXd hess = hessian_dense(sol);
  const double hh = effective_step(w.values(), h);

  double worst = 0.0, scale = 0.0;
  for (const auto& dir : tangent_directions(m, 8, 0x5eed2u)) {
    const Eigen::VectorXd an = hess * dir;
    const Eigen::VectorXd gp =
        dual_gradient(solve_wls(problem, WeightVector(w.values() + hh * dir)));
    const Eigen::VectorXd gm =
        dual_gradient(solve_wls(problem, WeightVector(w.values() - hh * dir)));
    const Eigen::VectorXd fd = (gp - gm) / (2.0 * hh);
    worst = std::max(worst, (fd - an).cwiseAbs().maxCoeff());
    scale = std::max({scale, an.cwiseAbs().maxCoeff(),
                      fd.cwiseAbs().maxCoeff()});
  }
  return worst /
         std::max(scale, 1e-14 * std::max(1.0, hess.cwiseAbs().maxCoeff()));
}

double brute_force_dual(const Problem& problem, double grid_resolution) {
  const int m = problem.m();
  const int n = problem.dim();
  if (m > 4)
    throw CapExceeded("brute-force dual maximization is limited to m <= 4");
  if (!(grid_resolution > 0.0) || grid_resolution > 1.0)
    throw InvalidConfig("grid resolution must lie in (0, 1]");
  if (!problem.basis().is_monomial())
    throw InvalidConfig("brute_force_dual requires a monomial basis");

  using SmallMat = Eigen::Matrix<Cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;
  using SmallVec = Eigen::Matrix<Cplx, Eigen::Dynamic, 1, 0, 4, 1>;
  SmallMat v(m, n);
  for (int j = 0; j < m; ++j) {
    Cplx p = 1.0;
    for (int k = 0; k < n; ++k) {
      v(j, k) = p;
      p *= problem.nodes()[j];
    }
  }
  const SmallVec f = problem.values();

  const int steps = std::max(1, static_cast<int>(std::lround(1.0 / grid_resolution)));
  double best = 0.0;
  Eigen::Vector4i k = Eigen::Vector4i::Zero();

  auto eval = [&](const Eigen::Vector4d& w) {
    int support = 0;
    for (int j = 0; j < m; ++j) support += w[j] > 0.0 ? 1 : 0;
    if (support < n + 1) return;  // d vanishes on degenerate supports
    SmallMat g = SmallMat::Zero(n, n);
    SmallVec rhs = SmallVec::Zero(n);
    for (int j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      g.noalias() += w[j] * v.row(j).adjoint() * v.row(j);
      rhs.noalias() += w[j] * v.row(j).adjoint() * f[j];
    }
    const SmallVec a = g.ldlt().solve(rhs);
    double d = 0.0;
    for (int j = 0; j < m; ++j)
      if (w[j] > 0.0) d += w[j] * std::norm(f[j] - (v.row(j) * a)(0, 0));
    best = std::max(best, d);
  };

  // Lattice k/steps over the simplex, the last coordinate implied.
  std::function<void(int, int)> rec = [&](int coord, int remaining) {
    if (coord == m - 1) {
      k[coord] = remaining;
      Eigen::Vector4d w = Eigen::Vector4d::Zero();
      for (int j = 0; j < m; ++j) w[j] = double(k[j]) / steps;
      eval(w);
      return;
    }
    for (int t = 0; t <= remaining; ++t) {
      k[coord] = t;
      rec(coord + 1, remaining - t);
    }
  };
  rec(0, steps);
  return best;
}

}  // namespace cheby
