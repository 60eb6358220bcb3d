#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "cheby/ipm.hpp"
#include "cheby/refcheck.hpp"
#include "cheby/wls.hpp"
#include "oracles.hpp"

using namespace cheby;

namespace {

Problem two_node_problem() {
  Eigen::VectorXcd x(2), f(2);
  x << -1.0, 1.0;
  f << 1.0, -1.0;
  return make_problem(x, f, BasisSpec::monomial(1), Mode::Real);
}

Problem xsq_problem() {
  Eigen::VectorXcd x(3), f(3);
  x << -1.0, 0.0, 1.0;
  f << 1.0, 0.0, 1.0;
  return make_problem(x, f, BasisSpec::monomial(1), Mode::Real);
}

}  // namespace

TEST_CASE("two-node constant fit by hand") {
  auto sol = solve_wls(two_node_problem(), WeightVector::uniform(2));
  CHECK(std::abs(sol.atilde[0]) < 1e-15);
  CHECK(std::abs(sol.r[0] - Cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(sol.r[1] - Cplx(-1.0, 0.0)) < 1e-15);
  CHECK(sol.d == doctest::Approx(1.0).epsilon(1e-14));

  SUBCASE("gradient") {
    const Eigen::VectorXd g = dual_gradient(sol);
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("hessian factor and dense hessian") {
    const HessianFactor kf = hessian_factor(sol);
    REQUIRE(kf.K.rows() == 1);
    REQUIRE(kf.K.cols() == 2);
    CHECK(kf.K(0, 0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(kf.K(0, 1) == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));

    const Eigen::MatrixXd h = hessian_dense(sol);
    CHECK(h(0, 0) == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(h(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(h(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(h(1, 1) == doctest::Approx(-2.0).epsilon(1e-12));

    // -hessian = 2 W^{-1/2} K^T K W^{-1/2} on the support
    Eigen::MatrixXd lhs = -h;
    Eigen::VectorXd wis = sol.w_used.values().cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd rhs =
        2.0 * wis.asDiagonal() * kf.K.transpose() * kf.K * wis.asDiagonal();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("weighted mean fit on the 3-node grid") {
  Eigen::VectorXd wv(3);
  wv << 0.25, 0.5, 0.25;
  auto sol = solve_wls(xsq_problem(), WeightVector(wv));
  CHECK(std::abs(sol.r[0] - Cplx(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(sol.r[1] - Cplx(-0.5, 0.0)) < 1e-14);
  CHECK(std::abs(sol.r[2] - Cplx(0.5, 0.0)) < 1e-14);
  CHECK(sol.d == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("interpolatory support gives d = 0") {
  // weight concentrated on n nodes: exact fit there
  Eigen::VectorXd wv(3);
  wv << 1.0, 0.0, 0.0;
  auto sol = solve_wls(xsq_problem(), WeightVector(wv));
  CHECK(sol.d == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(std::abs(sol.r[0]) < 1e-14);
  // off-support residuals still reported through the recurrence
  CHECK(std::abs(sol.r[1] - Cplx(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(sol.r[2]) < 1e-12);

  SUBCASE("zero residual implies zero gradient entries on support") {
    CHECK(dual_gradient(sol)[0] < 1e-20);
  }
}

TEST_CASE("wls invariants over random instances") {
  std::mt19937_64 rng(2718);
  for (int rep = 0; rep < 10; ++rep) {
    const bool cplx = rep % 2 == 1;
    auto inst = cplx ? oracles::random_complex_instance(rng, 30, 5)
                     : oracles::random_real_instance(rng, 30, 5);
    const Problem& p = inst.problem;
    const WeightVector w = oracles::random_interior_w(rng, p.m());
    auto sol = solve_wls(p, w);

    // d identity
    double d = 0.0;
    for (int j = 0; j < p.m(); ++j) d += w[j] * std::norm(sol.r[j]);
    CHECK(std::abs(sol.d - d) <= 1e-12 * std::max(1.0, d));

    // orthogonality of the weighted residual against the basis
    const Eigen::VectorXcd wr =
        sol.basis.sqrt_w.cast<Cplx>().cwiseProduct(sol.r);
    const double fscale = p.values().cwiseAbs().maxCoeff();
    CHECK((sol.basis.Q.adjoint() * wr).cwiseAbs().maxCoeff() <=
          1e-10 * std::max(1.0, fscale));

    // residual equals the dense-oracle fit residual
    const Eigen::VectorXcd fit_dense = oracles::dense_wls_fit(
        p.nodes(), p.values(), w.values(), p.dim(), p.nodes());
    CHECK((sol.r - (p.values() - fit_dense)).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("weak duality: d(w) never exceeds the squared minimax level") {
  // random simplex points on each builtin at a small dimension
  std::mt19937_64 rng(8128);
  struct Case {
    const char* name;
    double eta_star;
  };
  std::vector<Case> cases;
  for (const char* name : {"f1", "f2", "g1", "g2"}) {
    auto p = builtin_problem(name, 4);
    double eta_star;
    if (p.mode() == Mode::Real) {
      eta_star = lp_reference(p).eta;
    } else {
      IpmConfig cfg;
      cfg.eps_w = 1e-6 / p.m();
      eta_star = ipm_solve(p, cfg).eta;
    }
    std::exponential_distribution<double> expo(1.0);
    for (int s = 0; s < 200; ++s) {
      Eigen::VectorXd w(p.m());
      for (int i = 0; i < p.m(); ++i) w[i] = expo(rng);
      const double d = solve_wls(p, WeightVector(w)).d;
      REQUIRE(d <= eta_star * eta_star + 1e-8);
    }
  }
}

TEST_CASE("gradient matches central differences") {
  std::mt19937_64 rng(31415);
  auto inst = oracles::fixed_real_instance(rng, 30, 4);
  const WeightVector w = oracles::random_interior_w(rng, 30);
  CHECK(fd_gradient_check(inst.problem, w, 1e-5) < 1e-5);
}

TEST_CASE("hessian routes agree") {
  std::mt19937_64 rng(161803);
  SUBCASE("factor vs dense, complex instance") {
    auto inst = oracles::fixed_complex_instance(rng, 15, 3);
    const WeightVector w = oracles::random_interior_w(rng, 15);
    auto sol = solve_wls(inst.problem, w);
    const HessianFactor kf = hessian_factor(sol);
    REQUIRE(kf.K.rows() == 2 * inst.n);
    const Eigen::VectorXd wis = w.values().cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd lhs =
        2.0 * wis.asDiagonal() * kf.K.transpose() * kf.K * wis.asDiagonal();
    const Eigen::MatrixXd h = hessian_dense(sol);
    CHECK((lhs + h).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("dense hessian vs finite-differenced gradient") {
    auto inst = oracles::fixed_real_instance(rng, 12, 3);
    const WeightVector w = oracles::random_interior_w(rng, 12);
    CHECK(fd_hessian_check(inst.problem, w, 1e-4) < 1e-3);
  }
  SUBCASE("dense hessian is symmetric negative semidefinite") {
    auto inst = oracles::fixed_real_instance(rng, 30, 4);
    const WeightVector w = oracles::random_interior_w(rng, 30);
    auto sol = solve_wls(inst.problem, w);
    const Eigen::MatrixXd h = hessian_dense(sol);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().maxCoeff() <= 1e-10);
  }
  SUBCASE("zero residual gives zero factor") {
    // values already in the span: f = 2 - x on 4 nodes, n = 2
    Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(4, -1.0, 1.0);
    Eigen::VectorXcd f = 2.0 - x.array();
    auto p = make_problem(x, f, BasisSpec::monomial(2), Mode::Real);
    auto sol = solve_wls(p, WeightVector::uniform(4));
    CHECK(sol.d < 1e-28);
    CHECK(hessian_factor(sol).K.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(hessian_dense(sol).cwiseAbs().maxCoeff() < 1e-12);
  }
}
