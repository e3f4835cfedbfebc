#include "lyapcert/lyap_independent.hpp"
#include "lyapcert/structure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lyapcert {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

int v_matrix_size(const AlgorithmSpec& alg, int h) { return alg.n() + (h + 1) * alg.mbar() + alg.m(); }
int v_vector_size(const AlgorithmSpec& alg, int h) {
  return alg.m_func() > 0 ? (h + 1) * alg.mbar_func() + alg.m_func() : 0;
}
int r_matrix_size(const AlgorithmSpec& alg, int h, int alpha) {
  return alg.n() + (h + alpha + 2) * alg.mbar() + alg.m();
}
int r_vector_size(const AlgorithmSpec& alg, int h, int alpha) {
  return alg.m_func() > 0 ? (h + alpha + 2) * alg.mbar_func() + alg.m_func() : 0;
}

namespace {

void check_window(int h, int alpha) {
  if (h < 0 || alpha < 0) throw std::invalid_argument("h and alpha must be >= 0");
}

void check_tau(int tau, int upper) {
  if (tau < 0 || tau > upper)
    throw std::out_of_range("tau=" + std::to_string(tau) + " outside [0, " + std::to_string(upper) + "]");
}

IndepParams zero_params(const AlgorithmSpec& alg, int h, int alpha) {
  IndepParams p;
  p.h = h;
  p.alpha = alpha;
  p.P = MatrixXd::Zero(v_matrix_size(alg, h), v_matrix_size(alg, h));
  p.p = VectorXd::Zero(v_vector_size(alg, h));
  p.T = MatrixXd::Zero(r_matrix_size(alg, h, alpha), r_matrix_size(alg, h, alpha));
  p.t = VectorXd::Zero(r_vector_size(alg, h, alpha));
  return p;
}

MatrixXd gram_of_row(const RowVectorXd& r) { return r.transpose() * r; }

// Optimality measure on horizon hz at iteration tau (shared with the
// chained analysis through the same formula).
MatrixXd optimality_matrix(const AlgorithmSpec& alg, const Horizon& hz, int k) {
  const MatrixXd U = build_U(alg, hz, k);
  if (alg.m() == 1) return gram_of_row(build_P(alg, 1, 1) * U);
  RowVectorXd sum = RowVectorXd::Zero(U.cols());
  for (int i = 1; i <= alg.m(); ++i) sum += build_P(alg, i, 1) * U;
  MatrixXd out = gram_of_row(sum);
  const MatrixXd Y = build_Y(alg, hz, k);
  for (int i = 2; i <= alg.m(); ++i) out += gram_of_row((build_P(alg, 1, 1) - build_P(alg, i, 1)) * Y);
  return out;
}

}  // namespace

IndepParams params_linear_distance(const AlgorithmSpec& alg, int h, int alpha, int i, int j, int tau) {
  check_window(h, alpha);
  check_tau(tau, h);
  IndepParams p = zero_params(alg, h, alpha);
  const Horizon hz{0, h};
  const RowVectorXd diff =
      build_P(alg, i, j) * build_Y(alg, hz, tau) - build_P_star(alg, i) * build_Y_star(alg, hz);
  p.P = gram_of_row(diff);
  return p;
}

IndepParams params_linear_funcval(const AlgorithmSpec& alg, int h, int alpha, int j, int tau) {
  check_window(h, alpha);
  check_tau(tau, h);
  if (alg.m() != 1 || alg.m_func() != 1)
    throw std::invalid_argument("function-value parameters need a single function component");
  IndepParams p = zero_params(alg, h, alpha);
  const Horizon hz{0, h};
  p.p = (build_F(alg, hz, 1, j, tau) - build_F_star(alg, hz, 1)).transpose();
  return p;
}

IndepParams params_sublinear_optimality(const AlgorithmSpec& alg, int h, int alpha, int tau) {
  check_window(h, alpha);
  check_tau(tau, h + alpha + 1);
  IndepParams p = zero_params(alg, h, alpha);
  p.T = optimality_matrix(alg, {0, h + alpha + 1}, tau);
  return p;
}

IndepParams params_sublinear_fpr(const AlgorithmSpec& alg, int h, int alpha, int tau) {
  check_window(h, alpha);
  check_tau(tau, h + alpha + 1);
  IndepParams p = zero_params(alg, h, alpha);
  const Horizon hz{0, h + alpha + 1};
  const MatrixXd diff = build_X(alg, hz, tau + 1) - build_X(alg, hz, tau);
  p.T = diff.transpose() * diff;
  return p;
}

IndepParams params_sublinear_funcval(const AlgorithmSpec& alg, int h, int alpha, int j, int tau) {
  check_window(h, alpha);
  check_tau(tau, h + alpha + 1);
  if (alg.m() != 1 || alg.m_func() != 1)
    throw std::invalid_argument("function-value parameters need a single function component");
  IndepParams p = zero_params(alg, h, alpha);
  const Horizon hz{0, h + alpha + 1};
  p.t = (build_F(alg, hz, 1, j, tau) - build_F_star(alg, hz, 1)).transpose();
  return p;
}

namespace {

void check_params(const AlgorithmSpec& alg, const IndepParams& prm) {
  check_window(prm.h, prm.alpha);
  if (!(prm.rho >= 0.0 && prm.rho <= 1.0)) throw std::invalid_argument("rho must lie in [0, 1]");
  const int vm = v_matrix_size(alg, prm.h), vv = v_vector_size(alg, prm.h);
  const int rm = r_matrix_size(alg, prm.h, prm.alpha), rv = r_vector_size(alg, prm.h, prm.alpha);
  auto bad = [](const char* what, long got, long want) {
    throw std::invalid_argument(std::string(what) + " has size " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  };
  if (prm.P.rows() != vm || prm.P.cols() != vm) bad("P", prm.P.rows(), vm);
  if (prm.T.rows() != rm || prm.T.cols() != rm) bad("T", prm.T.rows(), rm);
  if (prm.p.size() != vv) bad("p", prm.p.size(), vv);
  if (prm.t.size() != rv) bad("t", prm.t.size(), rv);
}

}  // namespace

IndepModel build_independent_model(const InclusionProblem& problem, const AlgorithmSpec& alg,
                                   const IndepParams& prm) {
  check_compatible(problem, alg);
  if (!alg.stationary())
    throw std::invalid_argument("iteration-independent analysis needs a stationary algorithm ('" +
                                alg.name() + "' is not)");
  check_params(alg, prm);

  IndepModel im;
  SDPModel& model = im.model;
  const int h = prm.h, alpha = prm.alpha;
  const bool values = alg.m_func() > 0;
  const int vm = v_matrix_size(alg, h), rm = r_matrix_size(alg, h, alpha);

  // Q, S as affine expressions in the model (either variables or fixed).
  auto matrix_part = [&](bool alias, const MatrixXd& fixed, const char* name,
                         std::optional<SymMatrixVar>& var, int size) {
    if (alias) return AffineMatrix::from_constant(fixed);
    var = model.add_symmetric(name, size);
    return AffineMatrix::congruence(*var, MatrixXd::Identity(size, size));
  };
  auto vector_part = [&](bool alias, const VectorXd& fixed, const char* name,
                         std::optional<VectorVar>& var, int size) {
    if (!values) return AffineVector(0);
    if (alias) return AffineVector::from_constant(fixed);
    var = model.add_vector(name, size);
    return AffineVector::transpose_apply(*var, MatrixXd::Identity(size, size));
  };
  const AffineMatrix Qe = matrix_part(prm.Q_equals_P, prm.P, "Q", im.Q, vm);
  const AffineVector qe = vector_part(prm.q_equals_p, prm.p, "q", im.q, v_vector_size(alg, h));
  const AffineMatrix Se = matrix_part(prm.S_equals_T, prm.T, "S", im.S, rm);
  const AffineVector se = vector_part(prm.s_equals_t, prm.t, "s", im.s, r_vector_size(alg, h, alpha));

  auto congr = [](const AffineMatrix& X, const MatrixXd& T) {
    AffineMatrix out = AffineMatrix::from_constant(T.transpose() * X.constant * T);
    for (const auto& [v, M] : X.terms) out.add_term(v, T.transpose() * M * T);
    return out;
  };
  auto tapply = [](const AffineVector& x, const MatrixXd& T) {
    AffineVector out = AffineVector::from_constant(T.transpose() * x.constant);
    for (const auto& [v, c] : x.terms) out.add_term(v, T.transpose() * c);
    return out;
  };

  // (C1) V(k+alpha+1) - rho V(k) + R(k) <= 0 over [0, h+alpha+1].
  {
    const ShiftMaps sm = build_thetas(alg, ShiftFamily::C1, h, alpha);
    QuadForm obj;
    obj.W = congr(Qe, sm.Theta_after);
    obj.W.add(congr(Qe, sm.Theta_before), -prm.rho);
    obj.W.add(Se);
    if (values) {
      obj.w = tapply(qe, sm.theta_after);
      obj.w.add(tapply(qe, sm.theta_before), -prm.rho);
      obj.w.add(se);
    }
    assemble_dpep(model, obj, {0, h + alpha + 1}, problem, alg, "C1");
  }
  // (C2) V(P,p,k) <= V(Q,q,k) over [0, h].
  if (!prm.remove_C2 && !(prm.Q_equals_P && (!values || prm.q_equals_p))) {
    QuadForm obj;
    obj.W = AffineMatrix::from_constant(prm.P);
    obj.W.add(Qe, -1.0);
    if (values) {
      obj.w = AffineVector::from_constant(prm.p);
      obj.w.add(qe, -1.0);
    }
    assemble_dpep(model, obj, {0, h}, problem, alg, "C2");
  }
  // (C3) R(T,t,k) <= R(S,s,k) over [0, h+alpha+1].
  if (!prm.remove_C3 && !(prm.S_equals_T && (!values || prm.s_equals_t))) {
    QuadForm obj;
    obj.W = AffineMatrix::from_constant(prm.T);
    obj.W.add(Se, -1.0);
    if (values) {
      obj.w = AffineVector::from_constant(prm.t);
      obj.w.add(se, -1.0);
    }
    assemble_dpep(model, obj, {0, h + alpha + 1}, problem, alg, "C3");
  }
  // (C4) R(S,s,k+1) <= R(S,s,k) over [0, h+alpha+2].
  if (!prm.remove_C4) {
    const ShiftMaps sm = build_thetas(alg, ShiftFamily::C4, h, alpha);
    QuadForm obj;
    obj.W = congr(Se, sm.Theta_after);
    obj.W.add(congr(Se, sm.Theta_before), -1.0);
    if (values) {
      obj.w = tapply(se, sm.theta_after);
      obj.w.add(tapply(se, sm.theta_before), -1.0);
    }
    assemble_dpep(model, obj, {0, h + alpha + 2}, problem, alg, "C4");
  }
  return im;
}

IndepResult verify_independent(const InclusionProblem& problem, const AlgorithmSpec& alg,
                               const IndepParams& prm, const SolverSettings& settings) {
  IndepModel im = build_independent_model(problem, alg, prm);
  IndepResult out;
  out.verdict = solve(im.model, settings);
  if (out.verdict.feasible()) {
    IndepCertificate cert;
    cert.Q = im.Q ? out.verdict.value(*im.Q) : prm.P;
    cert.S = im.S ? out.verdict.value(*im.S) : prm.T;
    if (alg.m_func() > 0) {
      cert.q = im.q ? out.verdict.value(*im.q) : prm.p;
      cert.s = im.s ? out.verdict.value(*im.s) : prm.t;
    }
    out.certificate = std::move(cert);
  }
  return out;
}

BisectionResult bisect_rho(const InclusionProblem& problem, const AlgorithmSpec& alg,
                           IndepParams params, double lower, double upper, double tol,
                           const SolverSettings& settings) {
  if (!(lower >= 0.0 && upper <= 1.0 && lower <= upper))
    throw std::invalid_argument("bisection bracket must satisfy 0 <= lower <= upper <= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("bisection tolerance must be positive");

  BisectionResult br;
  auto attempt = [&](double rho) {
    params.rho = rho;
    ++br.solves;
    return verify_independent(problem, alg, params, settings);
  };
  // One retry at a nearby interior point before reporting a failure. The
  // retry moves towards hi, or inwards when rho is already the top end.
  auto decide = [&](double rho, double lo, double hi, double& used) -> std::optional<IndepResult> {
    used = rho;
    IndepResult r = attempt(rho);
    if (r.verdict.status != VerdictStatus::NumericalFailure) return r;
    const double step = 0.1 * (hi - lo);
    used = rho + step <= hi && step > 0.0 ? rho + step : rho - step;
    if (used == rho) return std::nullopt;
    r = attempt(used);
    if (r.verdict.status != VerdictStatus::NumericalFailure) return r;
    return std::nullopt;
  };

  double used = upper;
  auto top = decide(upper, lower, upper, used);
  if (!top) {
    br.status = VerdictStatus::NumericalFailure;
    return br;
  }
  if (!top->verdict.feasible() && used != upper) {
    // the top end stayed undecided and the point below it says nothing about it
    br.status = VerdictStatus::NumericalFailure;
    return br;
  }
  if (!top->verdict.feasible()) {
    br.status = VerdictStatus::Infeasible;
    br.bracket_low = br.bracket_high = upper;
    return br;
  }
  double lo = lower, hi = used;
  std::optional<IndepResult> best = std::move(top);

  auto bottom = attempt(lower);
  if (bottom.verdict.feasible()) {
    br.status = VerdictStatus::Feasible;
    br.rho = lower;
    br.bracket_low = br.bracket_high = lower;
    br.at_rho = std::move(bottom);
    return br;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    auto r = decide(mid, lo, hi, used);
    if (!r) {
      br.status = VerdictStatus::NumericalFailure;
      br.bracket_low = lo;
      br.bracket_high = hi;
      return br;
    }
    if (r->verdict.feasible()) {
      hi = used;
      best = std::move(r);
    } else {
      lo = used;
    }
  }
  br.status = VerdictStatus::Feasible;
  br.rho = hi;
  br.bracket_low = lo;
  br.bracket_high = hi;
  br.at_rho = std::move(best);
  return br;
}

}  // namespace lyapcert
