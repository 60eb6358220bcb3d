#include <doctest.h>

#include <random>

#include "cheby/ipm.hpp"
#include "cheby/refcheck.hpp"
#include "oracles.hpp"

using namespace cheby;

namespace {

Eigen::VectorXcd rvec(std::initializer_list<double> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Problem xsq_problem(int n) {
  return make_problem(rvec({-1, 0, 1}), rvec({1, 0, 1}), BasisSpec::monomial(n),
                      Mode::Real);
}

}  // namespace

TEST_CASE("reference point detection") {
  auto rs = detect_reference_points(rvec({0.5, -0.5, 0.5}), 0.5, 1e-8,
                                    Mode::Real);
  CHECK(rs.indices == std::vector<int>{0, 1, 2});
  CHECK(rs.signs == std::vector<int>{1, -1, 1});

  auto rs2 =
      detect_reference_points(rvec({0.1, 0.5}), 0.5, 1e-8, Mode::Real);
  CHECK(rs2.indices == std::vector<int>{1});

  auto rsc = detect_reference_points(rvec({0.5, -0.5}), 0.5, 1e-8,
                                     Mode::Complex);
  CHECK(rsc.signs.empty());
}

TEST_CASE("alternation check") {
  ReferenceSet rs;
  rs.signs = {1, -1, 1};
  rs.indices = {0, 1, 2};
  auto res = check_alternation(rs, 1);
  CHECK(res.ok);
  CHECK(res.alternating_run == 3);

  ReferenceSet rs2;
  rs2.signs = {1, 1};
  rs2.indices = {0, 1};
  CHECK_FALSE(check_alternation(rs2, 1).ok);
  CHECK(check_alternation(rs2, 1).alternating_run == 1);

  ReferenceSet rs3;  // blocks +,-,+ from [+,+,-,+]
  rs3.signs = {1, 1, -1, 1};
  rs3.indices = {0, 1, 2, 3};
  CHECK(check_alternation(rs3, 2).alternating_run == 3);
}

TEST_CASE("complementary slackness measure") {
  Eigen::VectorXd w1(3);
  w1 << 0.25, 0.5, 0.25;
  CHECK(check_complementary_slackness(w1, rvec({0.5, -0.5, 0.5}), 0.5) ==
        doctest::Approx(0.0));

  Eigen::VectorXd w2 = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  CHECK(check_complementary_slackness(w2, rvec({0.5, 0.0, 0.5}), 0.5) ==
        doctest::Approx(1.0 / 3.0));

  Eigen::VectorXd w3(3);
  w3 << 0.5, 0.0, 0.5;  // support inside argmax |r|
  CHECK(check_complementary_slackness(w3, rvec({0.5, 0.0, 0.5}), 0.5) ==
        doctest::Approx(0.0));
}

TEST_CASE("convergence factor estimate") {
  auto rs = detect_reference_points(rvec({0.5, -0.5, 0.5}), 0.5, 1e-8,
                                    Mode::Real);
  CHECK_FALSE(convergence_factor_estimate(rvec({0.5, -0.5, 0.5}), rs)
                  .has_value());

  ReferenceSet rs2;
  rs2.indices = {0, 2};
  rs2.eta = 0.5;
  auto rho = convergence_factor_estimate(rvec({0.5, 0.4, -0.5}), rs2);
  REQUIRE(rho.has_value());
  CHECK(*rho == doctest::Approx(0.8));
}

TEST_CASE("LP oracle on the classical equioscillation example") {
  // best affine fit of x^2 on {-1,0,1} has level 1/2
  auto lp = lp_reference(xsq_problem(2));
  CHECK(std::abs(lp.eta - 0.5) < 1e-9);
  CHECK(lp.residual.cwiseAbs().maxCoeff() == doctest::Approx(lp.eta));

  // brute-force grid over (a0, a1) confirms no affine fit does better
  double best = 1e9;
  for (double a0 = -1.0; a0 <= 1.0; a0 += 1e-2)
    for (double a1 = -1.0; a1 <= 1.0; a1 += 1e-2) {
      double level = 0.0;
      for (double x : {-1.0, 0.0, 1.0})
        level = std::max(level, std::abs(x * x - (a0 + a1 * x)));
      best = std::min(best, level);
    }
  CHECK(lp.eta <= best + 1e-9);

  SUBCASE("interpolation-feasible data gives eta = 0") {
    Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(5, -1.0, 1.0);
    Eigen::VectorXcd f = 0.3 + 0.7 * x.array();
    auto p = make_problem(x, f, BasisSpec::monomial(2), Mode::Real);
    CHECK(lp_reference(p).eta < 1e-12);
  }
  SUBCASE("complex mode and oversize problems are rejected") {
    Eigen::VectorXcd x(3), f(3);
    x << Cplx(0, 1), Cplx(1, 0), Cplx(0, -1);
    f << 1.0, 2.0, 3.0;
    auto pc = make_problem(x, f, BasisSpec::monomial(1), Mode::Complex);
    CHECK_THROWS_AS(lp_reference(pc), InvalidConfig);
    CHECK_THROWS_AS(lp_reference(xsq_problem(1), 2), CapExceeded);
  }
}

TEST_CASE("LP terminal multipliers alternate in sign") {
  std::mt19937_64 rng(77);
  for (int rep = 0; rep < 8; ++rep) {
    auto inst = oracles::random_real_instance(rng, 20, 4);
    auto lp = lp_reference(inst.problem);
    if (lp.eta < 1e-10) continue;  // interpolation-feasible, nothing to check
    REQUIRE(static_cast<int>(lp.basic_indices.size()) == inst.n + 1);
    // nonzero multipliers with strictly alternating signs in node order
    for (size_t i = 0; i + 1 < lp.basic_indices.size(); ++i)
      CHECK(lp.multipliers[i] * lp.multipliers[i + 1] < 0.0);
  }
}

TEST_CASE("LP agrees with the dense minimax of small random instances") {
  // against a fine grid over coefficients for n = 1 (search is cheap there)
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 5; ++rep) {
    auto inst = oracles::fixed_real_instance(rng, 8, 1);
    auto lp = lp_reference(inst.problem);
    double best = 1e9;
    for (double a = -2.0; a <= 2.0; a += 1e-4) {
      double level = 0.0;
      for (int j = 0; j < 8; ++j)
        level = std::max(level,
                         std::abs(inst.problem.values()[j].real() - a));
      best = std::min(best, level);
    }
    CHECK(std::abs(lp.eta - best) < 1e-3);
  }
}

TEST_CASE("LP and IPM agree on the real builtin problems") {
  for (const char* name : {"f1", "f2"}) {
    for (int dim : {5, 21}) {
      auto p = builtin_problem(name, dim);
      const double eta_lp = lp_reference(p).eta;
      IpmConfig cfg;
      cfg.eps_w = 1e-6 / p.m();
      const auto rep = ipm_solve(p, cfg);
      REQUIRE(rep.status == SolveStatus::converged);
      CHECK(std::abs(rep.eta - eta_lp) / eta_lp <= 1e-6);
    }
  }
}

TEST_CASE("converged f1/P21 run exposes exactly n+1 reference points") {
  auto p = builtin_problem("f1", 21);
  IpmConfig cfg;
  cfg.eps_w = 1e-6 / p.m();
  const auto rep = ipm_solve(p, cfg);
  REQUIRE(rep.status == SolveStatus::converged);
  CHECK(rep.reference_set.indices.size() == 22);
  const auto alt = check_alternation(rep.reference_set, 21);
  CHECK(alt.ok);
  CHECK(alt.alternating_run >= 22);
}

TEST_CASE("brute-force dual maximization") {
  SUBCASE("x^2 three-node problem") {
    const double d = brute_force_dual(xsq_problem(1), 1e-3);
    CHECK(std::abs(d - 0.25) <= 1e-3);
  }
  SUBCASE("two-node problem") {
    Eigen::VectorXcd x(2), f(2);
    x << -1.0, 1.0;
    f << 1.0, -1.0;
    auto p = make_problem(x, f, BasisSpec::monomial(1), Mode::Real);
    // d(w) = 4 w1 w2, maximum 1 at the center
    CHECK(std::abs(brute_force_dual(p, 1e-3) - 1.0) <= 1e-3);
  }
  SUBCASE("interpolation-feasible data") {
    Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(3, -1.0, 1.0);
    Eigen::VectorXcd f = 2.0 * x.array();
    auto p = make_problem(x, f, BasisSpec::monomial(2), Mode::Real);
    CHECK(brute_force_dual(p, 1e-2) == doctest::Approx(0.0));
  }
  SUBCASE("cap") {
    Eigen::VectorXcd x = Eigen::VectorXcd::LinSpaced(5, -1.0, 1.0);
    Eigen::VectorXcd f = Eigen::VectorXd::Random(5).cast<Cplx>();
    auto p = make_problem(x, f, BasisSpec::monomial(1), Mode::Real);
    CHECK_THROWS_AS(brute_force_dual(p, 1e-2), CapExceeded);
  }
}
