#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace lyapcert;
using namespace testsupport;

TEST_CASE("stack dimensions") {
  const auto dr = douglas_rachford(1.0, 2.0);
  const StackDims d = stack_dims(dr, {0, 2});
  CHECK(d.dim_zeta == 1 + 3 * 2 + 1 + 1);
  CHECK(d.dim_chi == 0);
  const auto fgm = nesterov_fgm(1.0);
  const StackDims f = stack_dims(fgm, {3, 4});
  CHECK(f.dim_zeta == 2 + 2 * 2 + 0 + 1);
  CHECK(f.dim_chi == 2 * 2 + 1);
  CHECK_THROWS(check_horizon({2, 1}));
  CHECK_THROWS(check_horizon({-1, 1}));
}

TEST_CASE("N matrix") {
  const MatrixXd N = build_N(3);
  CHECK(N.rows() == 3);
  CHECK(N.cols() == 2);
  CHECK(N.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
  CHECK(N.topRows(2) == MatrixXd::Identity(2, 2));
}

TEST_CASE("recursion identities for every built-in") {
  std::mt19937_64 rng(1);
  for (const auto& b : builtins()) {
    CAPTURE(b.name);
    for (int trial = 0; trial < 3; ++trial) {
      const AlgorithmSpec alg = b.make(rng);
      for (int kmin = 0; kmin <= 2; ++kmin)
        for (int kmax = kmin; kmax <= 4; ++kmax) CHECK(recursion_gap(alg, {kmin, kmax}) <= 1e-12);
    }
  }
}

TEST_CASE("selectors and shift maps reproduce trajectory pieces") {
  std::mt19937_64 rng(2);
  for (const auto& b : builtins()) {
    CAPTURE(b.name);
    const AlgorithmSpec alg = b.make(rng);
    const Trajectory tr = builtin_trajectory(b, alg, 7, 8);
    for (int kmin = 0; kmin <= 2; ++kmin) CHECK(selector_gap(tr, alg, {kmin, kmin + 2}) <= 1e-12);
    for (int k = 0; k <= 3; ++k) CHECK(theta_gap(tr, alg, ShiftFamily::Dependent, 0, 0, k) <= 1e-12);
    for (int h = 0; h <= 1; ++h)
      for (int a = 0; a <= 1; ++a) {
        CHECK(theta_gap(tr, alg, ShiftFamily::C1, h, a, 0) <= 1e-12);
        CHECK(theta_gap(tr, alg, ShiftFamily::C4, h, a, 0) <= 1e-12);
      }
  }
}

TEST_CASE("lifted conditions agree with direct evaluation") {
  // W and f of a lifted condition applied to the stacks equal the condition
  // evaluated on the raw data of its points.
  const auto prob = make_problem({Component(ComponentClass::smooth_strongly_convex(0.5, 2.0))});
  const auto alg = nesterov_fgm(0.5);
  const Builtin b{"fgm", [&](std::mt19937_64&) { return alg; }, prob};
  const Trajectory tr = builtin_trajectory(b, alg, 3, 5);
  const Horizon hz{1, 2};
  const MatrixXd z = zeta_stack(tr, alg, hz);
  const VectorXd chi = chi_stack(tr, alg, hz);
  for (const auto& cond : enumerate_conditions(prob.component(1), hz.kmin, hz.kmax, alg.evals(1))) {
    const LiftedCondition lc = lift_condition(cond, 1, alg, hz);
    const double lifted = gram_quadratic(lc.W, z) + lc.f.dot(chi);
    std::vector<VectorXd> ys, us;
    VectorXd F(cond.points.size());
    for (std::size_t r = 0; r < cond.points.size(); ++r) {
      const PointLabel& p = cond.points[r];
      if (p.star) {
        ys.push_back(tr.y_star);
        us.push_back(tr.u_star.row(0).transpose());
        F(r) = tr.F_star(0);
      } else {
        ys.push_back(tr.y[p.k].row(p.j - 1).transpose());
        us.push_back(tr.u[p.k].row(p.j - 1).transpose());
        F(r) = tr.F[p.k](p.j - 1);
      }
    }
    const double direct = evaluate_condition(cond.a, cond.M, ys, us, F);
    CHECK(lifted == doctest::Approx(direct).epsilon(1e-10));
  }
}

TEST_CASE("out-of-range requests throw") {
  const auto ogm = optimized_gradient_method(1.0, 3);
  CHECK_THROWS(build_X(ogm, {0, 3}, 4));
  CHECK_THROWS(build_Y(ogm, {0, 2}, 3));
  const auto gm = gradient_method(1.0);
  CHECK_THROWS(build_P(gm, 1, 2));
  CHECK_THROWS(build_F(gm, {0, 1}, 1, 1, 2));
  CHECK_THROWS(build_thetas(gm, ShiftFamily::C1, -1, 0));
}
