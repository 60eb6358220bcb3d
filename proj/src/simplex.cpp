#include "cheby/simplex.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace cheby {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-11;
constexpr int kStallLimit = 40;  // degenerate pivots before Bland kicks in

struct Tableau {
  const Eigen::MatrixXd& a;
  const Eigen::VectorXd& b;
  Eigen::VectorXd c;
  std::vector<int> basis;
  Eigen::VectorXd xb;
  Eigen::VectorXd pi;
  int iterations = 0;
};

void refactor(Tableau& t, Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  const int nr = static_cast<int>(t.a.rows());
  Eigen::MatrixXd ab(nr, nr);
  Eigen::VectorXd cb(nr);
  for (int i = 0; i < nr; ++i) {
    ab.col(i) = t.a.col(t.basis[i]);
    cb[i] = t.c[t.basis[i]];
  }
  lu.compute(ab);
  t.xb = lu.solve(t.b);
  t.pi = lu.transpose().solve(cb);
}

// Runs the simplex loop until optimality; returns false on unbounded.
// Only columns below eligible_cols may enter the basis.
bool iterate(Tableau& t, int eligible_cols, int max_pivots) {
  const int nr = static_cast<int>(t.a.rows());
  const int nc = static_cast<int>(t.a.cols());
  std::vector<char> in_basis(nc, 0);
  for (int j : t.basis) in_basis[j] = 1;

  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  refactor(t, lu);
  int stall = 0;
  double last_obj = std::numeric_limits<double>::infinity();

  for (int pivot = 0; pivot < max_pivots; ++pivot) {
    const bool bland = stall >= kStallLimit;
    int enter = -1;
    double best = -kReducedCostTol;
    for (int j = 0; j < eligible_cols; ++j) {
      if (in_basis[j]) continue;
      const double dj = t.c[j] - t.pi.dot(t.a.col(j));
      if (dj < best) {
        enter = j;
        if (bland) break;  // first eligible index
        best = dj;
      }
    }
    if (enter < 0) return true;  // optimal

    const Eigen::VectorXd u = lu.solve(t.a.col(enter));
    int leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nr; ++i) {
      if (u[i] <= kPivotTol) continue;
      const double ratio = t.xb[i] / u[i];
      if (ratio < best_ratio - 1e-13 ||
          (ratio < best_ratio + 1e-13 &&
           (leave < 0 || t.basis[i] < t.basis[leave]))) {
        best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return false;  // unbounded

    in_basis[t.basis[leave]] = 0;
    in_basis[enter] = 1;
    t.basis[leave] = enter;
    refactor(t, lu);
    ++t.iterations;

    double obj = 0.0;
    for (int i = 0; i < nr; ++i) obj += t.c[t.basis[i]] * t.xb[i];
    if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj)))
      stall = 0;
    else
      ++stall;
    last_obj = obj;
  }
  throw LpFailure("simplex pivot limit exceeded");
}

}  // namespace

SimplexResult solve_standard_lp(const Eigen::MatrixXd& a,
                                const Eigen::VectorXd& b,
                                const Eigen::VectorXd& c) {
  const int nr = static_cast<int>(a.rows());
  const int nc = static_cast<int>(a.cols());
  if (b.size() != nr || c.size() != nc)
    throw InvalidConfig("inconsistent LP dimensions");

  // Orient rows so the right-hand side is nonnegative, then start phase 1
  // from an all-artificial basis.
  Eigen::MatrixXd a1(nr, nc + nr);
  Eigen::VectorXd b1 = b;
  a1.leftCols(nc) = a;
  a1.rightCols(nr).setZero();
  for (int i = 0; i < nr; ++i) {
    if (b1[i] < 0.0) {
      b1[i] = -b1[i];
      a1.row(i).head(nc) = -a.row(i);
    }
    a1(i, nc + i) = 1.0;
  }
  Eigen::VectorXd c1 = Eigen::VectorXd::Zero(nc + nr);
  c1.tail(nr).setOnes();

  Tableau p1{a1, b1, c1, {}, {}, {}, 0};
  p1.basis.resize(nr);
  for (int i = 0; i < nr; ++i) p1.basis[i] = nc + i;
  const int max_pivots = 200 * (nr + nc);
  if (!iterate(p1, nc + nr, max_pivots))
    throw LpFailure("phase-1 LP unbounded (internal error)");

  double infeas = 0.0;
  for (int i = 0; i < nr; ++i)
    if (p1.basis[i] >= nc) infeas += std::abs(p1.xb[i]);
  if (infeas > 1e-7 * (1.0 + b.cwiseAbs().maxCoeff()))
    throw LpFailure("LP infeasible");

  // Pivot any zero-level artificials out of the basis.
  for (int i = 0; i < nr; ++i) {
    if (p1.basis[i] < nc) continue;
    Eigen::MatrixXd ab(nr, nr);
    for (int k = 0; k < nr; ++k) ab.col(k) = a1.col(p1.basis[k]);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(ab);
    bool replaced = false;
    for (int j = 0; j < nc && !replaced; ++j) {
      bool used = false;
      for (int k = 0; k < nr; ++k) used = used || p1.basis[k] == j;
      if (used) continue;
      const Eigen::VectorXd u = lu.solve(a1.col(j));
      if (std::abs(u[i]) > 1e-9) {
        p1.basis[i] = j;
        replaced = true;
      }
    }
    if (!replaced)
      throw LpFailure("redundant LP row (rank-deficient constraints)");
  }

  Tableau p2{a1, b1, c1, p1.basis, {}, {}, p1.iterations};
  p2.c.setZero();
  p2.c.head(nc) = c;
  // Sign flips applied to rows of a1 do not change the feasible set; phase 2
  // runs on the same matrix with the real objective.
  if (!iterate(p2, nc, max_pivots)) throw LpFailure("LP unbounded");

  SimplexResult res;
  res.basis = p2.basis;
  res.iterations = p2.iterations;
  res.x = Eigen::VectorXd::Zero(nc);
  for (int i = 0; i < nr; ++i) {
    if (p2.basis[i] >= nc) {
      if (std::abs(p2.xb[i]) > 1e-9)
        throw LpFailure("artificial variable stuck in optimal basis");
      continue;
    }
    res.x[p2.basis[i]] = p2.xb[i];
  }
  res.objective = c.dot(res.x);
  // Undo the row sign flips in the multipliers.
  res.pi = p2.pi;
  for (int i = 0; i < nr; ++i)
    if (b[i] < 0.0) res.pi[i] = -res.pi[i];
  return res;
}

}  // namespace cheby
