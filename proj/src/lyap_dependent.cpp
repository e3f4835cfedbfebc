#include "lyapcert/lyap_dependent.hpp"
#include "lyapcert/structure.hpp"

#include <stdexcept>
#include <string>

namespace lyapcert {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

int step_matrix_size(const AlgorithmSpec& alg) { return alg.n() + alg.mbar() + alg.m(); }
int step_vector_size(const AlgorithmSpec& alg) {
  return alg.m_func() > 0 ? alg.mbar_func() + alg.m_func() : 0;
}

namespace {

StepForm zero_step(const AlgorithmSpec& alg) {
  const int s = step_matrix_size(alg);
  return {MatrixXd::Zero(s, s), VectorXd::Zero(step_vector_size(alg))};
}

MatrixXd gram_of_row(const RowVectorXd& r) { return r.transpose() * r; }

}  // namespace

StepForm dep_params_funcval(const AlgorithmSpec& alg, int k, int j) {
  if (alg.m() != 1 || alg.m_func() != 1)
    throw std::invalid_argument("function-value parameters need a single function component");
  StepForm f = zero_step(alg);
  const Horizon hz{k, k};
  f.q = (build_F(alg, hz, 1, j, k) - build_F_star(alg, hz, 1)).transpose();
  return f;
}

StepForm dep_params_distance(const AlgorithmSpec& alg, int k, int i, int j) {
  StepForm f = zero_step(alg);
  const Horizon hz{k, k};
  f.Q = gram_of_row(build_P(alg, i, j) * build_Y(alg, hz, k) -
                    build_P_star(alg, i) * build_Y_star(alg, hz));
  return f;
}

StepForm dep_params_fpr(const AlgorithmSpec& alg, int k) {
  StepForm f = zero_step(alg);
  const Horizon hz{k, k};
  const MatrixXd diff = build_X(alg, hz, k + 1) - build_X(alg, hz, k);
  f.Q = diff.transpose() * diff;
  return f;
}

StepForm dep_params_optimality(const AlgorithmSpec& alg, int k) {
  StepForm f = zero_step(alg);
  const Horizon hz{k, k};
  const MatrixXd U = build_U(alg, hz, k);
  if (alg.m() == 1) {
    f.Q = gram_of_row(build_P(alg, 1, 1) * U);
    return f;
  }
  RowVectorXd sum = RowVectorXd::Zero(U.cols());
  for (int i = 1; i <= alg.m(); ++i) sum += build_P(alg, i, 1) * U;
  f.Q = gram_of_row(sum);
  const MatrixXd Y = build_Y(alg, hz, k);
  for (int i = 2; i <= alg.m(); ++i)
    f.Q += gram_of_row((build_P(alg, 1, 1) - build_P(alg, i, 1)) * Y);
  return f;
}

DepModel build_dependent_model(const InclusionProblem& problem, const AlgorithmSpec& alg,
                               const DepParams& prm) {
  check_compatible(problem, alg);
  if (prm.K < 1) throw std::invalid_argument("K must be >= 1");
  if (alg.budget() && prm.K > *alg.budget())
    throw std::out_of_range("K=" + std::to_string(prm.K) + " exceeds the algorithm budget " +
                            std::to_string(*alg.budget()));
  const int sm = step_matrix_size(alg), sv = step_vector_size(alg);
  const bool values = alg.m_func() > 0;
  for (const StepForm* f : {&prm.first, &prm.last}) {
    if (f->Q.rows() != sm || f->Q.cols() != sm)
      throw std::invalid_argument("endpoint matrix has size " + std::to_string(f->Q.rows()) +
                                  ", expected " + std::to_string(sm));
    if (f->q.size() != sv)
      throw std::invalid_argument("endpoint vector has size " + std::to_string(f->q.size()) +
                                  ", expected " + std::to_string(sv));
  }

  DepModel dm;
  SDPModel& model = dm.model;
  const int K = prm.K;
  dm.c = model.add_scalar("c", VarSign::Nonnegative);
  dm.Q.resize(K + 1);
  dm.q.resize(K + 1);
  for (int k = 1; k < K; ++k) {
    dm.Q[k] = model.add_symmetric("Q" + std::to_string(k), sm);
    if (values) dm.q[k] = model.add_vector("q" + std::to_string(k), sv);
  }

  // V(k+1) composed with the step map, as an affine expression.
  auto next_matrix = [&](int k, const MatrixXd& T) {
    if (k + 1 == K) return AffineMatrix::from_constant(T.transpose() * prm.last.Q * T);
    return AffineMatrix::congruence(*dm.Q[k + 1], T);
  };
  auto next_vector = [&](int k, const MatrixXd& T) {
    if (k + 1 == K) return AffineVector::from_constant(T.transpose() * prm.last.q);
    return AffineVector::transpose_apply(*dm.q[k + 1], T);
  };

  for (int k = 0; k < K; ++k) {
    const ShiftMaps sh = build_thetas(alg, ShiftFamily::Dependent, 0, 0, k);
    QuadForm obj;
    obj.W = next_matrix(k, sh.Theta_after);
    if (k == 0) {
      const MatrixXd base = sh.Theta_before.transpose() * prm.first.Q * sh.Theta_before;
      obj.W.add_term(dm.c, -base);
    } else {
      obj.W.add(AffineMatrix::congruence(*dm.Q[k], sh.Theta_before), -1.0);
    }
    if (values) {
      obj.w = next_vector(k, sh.theta_after);
      if (k == 0) {
        obj.w.add_term(dm.c, -(sh.theta_before.transpose() * prm.first.q));
      } else {
        obj.w.add(AffineVector::transpose_apply(*dm.q[k], sh.theta_before), -1.0);
      }
    }
    assemble_dpep(model, obj, {k, k + 1}, problem, alg, "step" + std::to_string(k));
  }
  model.minimize(dm.c);
  return dm;
}

DepResult verify_dependent(const InclusionProblem& problem, const AlgorithmSpec& alg,
                           const DepParams& prm, const SolverSettings& settings) {
  DepModel dm = build_dependent_model(problem, alg, prm);
  DepResult out;
  out.verdict = solve(dm.model, settings);
  if (out.verdict.feasible()) {
    out.c = out.verdict.value(dm.c);
    for (int k = 1; k < prm.K; ++k) {
      StepForm f;
      f.Q = out.verdict.value(*dm.Q[k]);
      if (dm.q[k]) f.q = out.verdict.value(*dm.q[k]);
      out.intermediate.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace lyapcert
