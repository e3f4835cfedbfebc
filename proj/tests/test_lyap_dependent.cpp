#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include "lyapcert/lyap_dependent.hpp"

using namespace lyapcert;
using namespace testsupport;

namespace {

const InclusionProblem& smooth_convex() {
  static const InclusionProblem p = make_problem({Component(ComponentClass::smooth_convex(1.0))});
  return p;
}

DepParams endpoints(const AlgorithmSpec& alg, int K, int j = 1) {
  DepParams p;
  p.K = K;
  p.first = dep_params_distance(alg, 0, 1, j);
  p.last = dep_params_funcval(alg, K, j);
  return p;
}

}  // namespace

TEST_CASE("step sizes and endpoint forms") {
  const auto fgm = nesterov_fgm(1.0);
  CHECK(step_matrix_size(fgm) == 2 + 2 + 1);
  CHECK(step_vector_size(fgm) == 3);
  const StepForm d = dep_params_distance(fgm, 0, 1, 2);
  CHECK(d.Q.rows() == 5);
  CHECK(d.q.size() == 3);
  CHECK(d.q.cwiseAbs().maxCoeff() == 0.0);

  // forms on the trajectory
  const Builtin b{"fgm", [&](std::mt19937_64&) { return fgm; }, smooth_convex()};
  const Trajectory tr = builtin_trajectory(b, fgm, 4, 5);
  const auto inst = sample_instance(smooth_convex(), 3, 4);
  for (int k = 0; k <= 4; ++k) {
    const StepForm dk = dep_params_distance(fgm, k, 1, 2);
    CHECK(evaluate_quadform(dk.Q, dk.q, tr, fgm, {k, k}) ==
          doctest::Approx((tr.x[k].row(0).transpose() - tr.y_star).squaredNorm()));
    const StepForm fk = dep_params_funcval(fgm, k, 2);
    CHECK(evaluate_quadform(fk.Q, fk.q, tr, fgm, {k, k}) ==
          doctest::Approx(inst.components[0].value(tr.x[k].row(0).transpose()) - tr.F_star(0)));
    const StepForm rk = dep_params_fpr(fgm, k);
    CHECK(evaluate_quadform(rk.Q, rk.q, tr, fgm, {k, k}) ==
          doctest::Approx((tr.x[k + 1] - tr.x[k]).squaredNorm()));
    const StepForm ok = dep_params_optimality(fgm, k);
    CHECK(evaluate_quadform(ok.Q, ok.q, tr, fgm, {k, k}) == doctest::Approx(tr.u[k].row(0).squaredNorm()));
  }
}

TEST_CASE("one gradient step reproduces the tight worst case") {
  // f(x1) - f* <= L ||x0 - x*||^2 / (4K + 2) is attained for gamma = 1/L
  const auto alg = gradient_method(1.0);
  const DepResult r = verify_dependent(smooth_convex(), alg, endpoints(alg, 1));
  REQUIRE(r.verdict.feasible());
  REQUIRE(r.c);
  CHECK(*r.c == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
  CHECK(r.intermediate.empty());
}

TEST_CASE("longer chains stay above the tight bound and hold on runs") {
  const auto alg = gradient_method(1.0);
  const int K = 4;
  const DepResult r = verify_dependent(smooth_convex(), alg, endpoints(alg, K));
  REQUIRE(r.verdict.feasible());
  REQUIRE(r.c);
  CHECK(*r.c >= 1.0 / (4 * K + 2) - 1e-6);
  CHECK(*r.c <= 1.0 / 6.0);
  CHECK(r.intermediate.size() == static_cast<std::size_t>(K - 1));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = sample_instance(smooth_convex(), 3, seed);
    std::mt19937_64 rng(seed);
    const Trajectory tr = run_trajectory(inst, alg, gaussian(3, rng).transpose(), K);
    const double gap = inst.components[0].value(tr.x[K].transpose()) - tr.F_star(0);
    const double dist = (tr.x[0].row(0).transpose() - tr.y_star).squaredNorm();
    CHECK(gap <= *r.c * dist * (1 + 1e-6) + 1e-9);
  }
}

TEST_CASE("fast gradient beats the plain method") {
  const auto gm = gradient_method(1.0), fgm = nesterov_fgm(1.0);
  const DepResult a = verify_dependent(smooth_convex(), gm, endpoints(gm, 5));
  const DepResult b = verify_dependent(smooth_convex(), fgm, endpoints(fgm, 5, 2));
  REQUIRE(a.c);
  REQUIRE(b.c);
  CHECK(*b.c < *a.c);
  const auto lam = fgm_lambda_sequence(6);
  CHECK(*b.c <= 1.0 / (2.0 * lam[5] * lam[5]) + 1e-6);
}

TEST_CASE("argument errors") {
  const auto alg = gradient_method(1.0);
  DepParams p = endpoints(alg, 2);
  p.K = 0;
  CHECK_THROWS(verify_dependent(smooth_convex(), alg, p));
  p = endpoints(alg, 2);
  p.first.Q = MatrixXd::Zero(1, 1);
  CHECK_THROWS(verify_dependent(smooth_convex(), alg, p));
  CHECK_THROWS(dep_params_funcval(douglas_rachford(1, 1), 0));
  // budgeted methods stop at their budget
  const auto ogm = optimized_gradient_method(1.0, 3);
  CHECK_THROWS(verify_dependent(smooth_convex(), ogm, endpoints(ogm, 4)));
}
