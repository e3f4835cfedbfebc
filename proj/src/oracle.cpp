#include "lyapcert/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace lyapcert {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Smallest value of |g|^2 / (2 f) for g = 2y + 3 sin 2y, f = y^2 + 3 sin^2 y
// is about 0.1755; this leaves a margin.
constexpr double kSinePl = 0.17;
constexpr double kSineCurvLow = -4.0;
constexpr double kSineCurvHigh = 8.0;

VectorXd gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VectorXd v(d);
  for (int r = 0; r < d; ++r) v(r) = nd(rng);
  return v;
}

MatrixXd gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  MatrixXd M(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) M(r, c) = nd(rng);
  return M;
}

double uniform(double lo, double hi, std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

MatrixXd orthogonal(int d, std::mt19937_64& rng) {
  const MatrixXd G = gaussian(d, d, rng);
  Eigen::HouseholderQR<MatrixXd> qr(G);
  MatrixXd Q = qr.householderQ();
  const MatrixXd R = qr.matrixQR();
  for (int c = 0; c < d; ++c)
    if (R(c, c) < 0) Q.col(c) *= -1.0;
  return Q;
}

MatrixXd with_spectrum(const VectorXd& eig, std::mt19937_64& rng) {
  const MatrixXd Q = orthogonal(static_cast<int>(eig.size()), rng);
  MatrixXd M = Q * eig.asDiagonal() * Q.transpose();
  return 0.5 * (M + M.transpose());
}

VectorXd spectrum_in(double lo, double hi, int d, std::mt19937_64& rng) {
  VectorXd eig(d);
  for (int r = 0; r < d; ++r) eig(r) = uniform(lo, hi, rng);
  // Half of the samples put eigenvalues exactly on both ends.
  if (d >= 2 && uniform(0.0, 1.0, rng) < 0.5) {
    eig(0) = lo;
    eig(d - 1) = hi;
  }
  return eig;
}

struct FunctionBounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  double pl = 0.0;  // GradientDominated constant, 0 when absent
};

FunctionBounds function_bounds(const Component& comp) {
  FunctionBounds fb;
  for (const auto& cls : comp.classes()) {
    if (cls.tag() == ClassTag::GradientDominated) {
      fb.pl = std::max(fb.pl, cls.param("mu_gd"));
      continue;
    }
    const CurvatureBounds cb = cls.curvature();
    fb.lo = std::max(fb.lo, cb.mu);
    if (cb.L) fb.hi = std::min(fb.hi, *cb.L);
  }
  return fb;
}

struct OperatorBounds {
  double mono = 0.0;
  double lip = std::numeric_limits<double>::infinity();
  double beta = 0.0;
};

OperatorBounds operator_bounds(const Component& comp) {
  OperatorBounds ob;
  for (const auto& cls : comp.classes()) {
    switch (cls.tag()) {
      case ClassTag::StronglyMonotone: ob.mono = std::max(ob.mono, cls.param("mu")); break;
      case ClassTag::LipschitzOperator: ob.lip = std::min(ob.lip, cls.param("L")); break;
      case ClassTag::Cocoercive: ob.beta = std::max(ob.beta, cls.param("beta")); break;
      default: break;
    }
  }
  return ob;
}

double spectral_norm(const MatrixXd& M) {
  Eigen::JacobiSVD<MatrixXd> svd(M);
  return svd.singularValues()(0);
}

ConcreteComponent sample_function(const Component& comp, int d, std::mt19937_64& rng) {
  FunctionBounds fb = function_bounds(comp);
  double lo = fb.lo, hi = fb.hi;
  if (fb.pl > 0.0) lo = std::max({lo, fb.pl, 0.0});
  if (!std::isfinite(lo)) lo = -uniform(0.0, 3.0, rng);
  if (!std::isfinite(hi)) hi = std::max(lo, 0.0) + uniform(0.5, 4.0, rng);
  if (lo > hi) throw std::invalid_argument("component " + comp.describe() + " has no quadratic member");
  ConcreteComponent cc;
  cc.form = ConcreteComponent::Form::Quadratic;
  cc.M = with_spectrum(spectrum_in(lo, hi, d, rng), rng);
  return cc;
}

ConcreteComponent sample_operator(const Component& comp, int d, std::mt19937_64& rng) {
  const OperatorBounds ob = operator_bounds(comp);
  ConcreteComponent cc;
  cc.form = ConcreteComponent::Form::Affine;
  if (ob.beta > 0.0) {
    const double hi = std::min(ob.lip, 1.0 / ob.beta);
    if (ob.mono > hi) throw std::invalid_argument("component " + comp.describe() + " has no affine member");
    cc.M = with_spectrum(spectrum_in(ob.mono, hi, d, rng), rng);
    return cc;
  }
  if (ob.mono > ob.lip) throw std::invalid_argument("component " + comp.describe() + " has no affine member");
  const MatrixXd G = gaussian(d, d, rng) / std::sqrt(static_cast<double>(d));
  const MatrixXd H = gaussian(d, d, rng) / std::sqrt(static_cast<double>(d));
  MatrixXd R = uniform(0.0, 1.0, rng) * G * G.transpose() + 0.5 * (H - H.transpose());
  const MatrixXd I = MatrixXd::Identity(d, d);
  double t = uniform(0.2, 2.0, rng);
  if (std::isfinite(ob.lip)) {
    auto fits = [&](double s) { return spectral_norm(ob.mono * I + s * R) <= ob.lip; };
    double a = 0.0, b = t;
    while (fits(b) && b < 1e6) b *= 2.0;
    if (!fits(b)) {
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        (fits(mid) ? a : b) = mid;
      }
      t = uniform(0.0, 1.0, rng) < 0.5 ? a : a * uniform(0.0, 1.0, rng);
    }
  }
  cc.M = ob.mono * I + t * R;
  return cc;
}

void finish_instance(ConcreteInstance& inst, const InclusionProblem& problem, std::mt19937_64& rng) {
  const int d = inst.d, m = problem.m();
  inst.u_star.assign(m, VectorXd::Zero(d));
  VectorXd sum = VectorXd::Zero(d);
  for (int i = 0; i + 1 < m; ++i) {
    inst.u_star[i] = gaussian(d, rng);
    sum += inst.u_star[i];
  }
  if (m > 1) inst.u_star[m - 1] = -sum;
  for (int i = 0; i < m; ++i) {
    ConcreteComponent& cc = inst.components[i];
    if (cc.form != ConcreteComponent::Form::Sine) {
      cc.b = inst.u_star[i] - cc.M * inst.y_star;
      if (cc.form == ConcreteComponent::Form::Quadratic) cc.c = uniform(-1.0, 1.0, rng);
    }
  }
  inst.F_star.resize(problem.m_func());
  int r = 0;
  for (int i : problem.func_indices) inst.F_star(r++) = inst.components[i - 1].value(inst.y_star);
}

}  // namespace

double ConcreteComponent::value(const VectorXd& y) const {
  switch (form) {
    case Form::Quadratic: return 0.5 * y.dot(M * y) + b.dot(y) + c;
    case Form::Sine: {
      double s = 0.0;
      for (int r = 0; r < y.size(); ++r) s += y(r) * y(r) + 3.0 * std::sin(y(r)) * std::sin(y(r));
      return scale * s + c;
    }
    case Form::Affine: break;
  }
  throw std::logic_error("operator components have no function value");
}

VectorXd ConcreteComponent::apply(const VectorXd& y) const {
  if (form == Form::Sine) {
    VectorXd g(y.size());
    for (int r = 0; r < y.size(); ++r) g(r) = scale * (2.0 * y(r) + 3.0 * std::sin(2.0 * y(r)));
    return g;
  }
  return M * y + b;
}

VectorXd ConcreteComponent::solve_implicit(const VectorXd& v, double step) const {
  if (form == Form::Sine) throw std::logic_error("implicit evaluation is not available for the sine function");
  const int d = static_cast<int>(v.size());
  const MatrixXd sys = MatrixXd::Identity(d, d) - step * M;
  Eigen::FullPivLU<MatrixXd> lu(sys);
  if (!lu.isInvertible() || lu.rcond() < 1e-12)
    throw std::runtime_error("singular implicit (resolvent) system");
  return lu.solve(v + step * b);
}

MatrixXd random_orthogonal(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return orthogonal(d, rng);
}

ConcreteInstance sample_instance(const InclusionProblem& problem, int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("sample_instance: d must be >= 2");
  std::mt19937_64 rng(seed);
  ConcreteInstance inst;
  inst.d = d;
  for (const auto& comp : problem.components)
    inst.components.push_back(comp.kind() == ComponentKind::Function ? sample_function(comp, d, rng)
                                                                     : sample_operator(comp, d, rng));
  inst.y_star = gaussian(d, rng);
  finish_instance(inst, problem, rng);
  for (int i = 1; i <= problem.m(); ++i) check_membership(inst.components[i - 1], problem.component(i));
  return inst;
}

ConcreteInstance sample_sine_instance(const InclusionProblem& problem, int d, std::uint64_t seed) {
  if (problem.m() != 1 || problem.m_func() != 1)
    throw std::invalid_argument("sine instances need a single function component");
  const Component& comp = problem.component(1);
  double s_lo = 0.0, s_hi = std::numeric_limits<double>::infinity();
  for (const auto& cls : comp.classes()) {
    switch (cls.tag()) {
      case ClassTag::GradientDominated: s_lo = std::max(s_lo, cls.param("mu_gd") / kSinePl); break;
      case ClassTag::Smooth: s_hi = std::min(s_hi, cls.param("L") / kSineCurvHigh); break;
      case ClassTag::WeaklyConvex: s_hi = std::min(s_hi, cls.param("mu_tilde") / -kSineCurvLow); break;
      case ClassTag::SmoothWeaklyConvex:
        s_hi = std::min({s_hi, cls.param("L") / kSineCurvHigh, cls.param("mu_tilde") / -kSineCurvLow});
        break;
      default:
        throw std::invalid_argument("the sine function is not a member of " + cls.describe());
    }
  }
  if (s_lo <= 0.0) s_lo = 0.1;
  if (!std::isfinite(s_hi)) s_hi = 2.0 * s_lo + 1.0;
  if (s_lo > s_hi) throw std::invalid_argument("no sine member for " + comp.describe());
  std::mt19937_64 rng(seed);
  ConcreteInstance inst;
  inst.d = d;
  ConcreteComponent cc;
  cc.form = ConcreteComponent::Form::Sine;
  cc.scale = uniform(s_lo, s_hi, rng);
  cc.c = uniform(-1.0, 1.0, rng);
  inst.components.push_back(cc);
  inst.y_star = VectorXd::Zero(d);
  inst.u_star.assign(1, VectorXd::Zero(d));
  inst.F_star = VectorXd::Constant(1, cc.c);
  return inst;
}

void check_membership(const ConcreteComponent& cc, const Component& comp) {
  const double tol = 1e-10;
  auto fail = [&](const std::string& what) {
    throw std::logic_error("sampled member violates " + comp.describe() + ": " + what);
  };
  if (cc.form == ConcreteComponent::Form::Sine) {
    for (const auto& cls : comp.classes()) {
      if (cls.tag() == ClassTag::GradientDominated && cls.param("mu_gd") > kSinePl * cc.scale + tol)
        fail("PL constant");
      if (cls.tag() == ClassTag::Smooth && kSineCurvHigh * cc.scale > cls.param("L") + tol)
        fail("smoothness");
    }
    return;
  }
  const int d = static_cast<int>(cc.M.rows());
  if (cc.form == ConcreteComponent::Form::Quadratic) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(cc.M, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff(), emax = es.eigenvalues().maxCoeff();
    const FunctionBounds fb = function_bounds(comp);
    const double scale = std::max(1.0, std::abs(emax));
    if (emin < fb.lo - tol * scale) fail("lower curvature");
    if (emax > fb.hi + tol * scale) fail("upper curvature");
    if (fb.pl > 0.0 && emin < fb.pl - tol * scale) fail("gradient domination");
    return;
  }
  const OperatorBounds ob = operator_bounds(comp);
  const MatrixXd sym = 0.5 * (cc.M + cc.M.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, cc.M.norm());
  if (es.eigenvalues().minCoeff() < ob.mono - tol * scale) fail("monotonicity");
  if (std::isfinite(ob.lip) && spectral_norm(cc.M) > ob.lip + tol * scale) fail("Lipschitz bound");
  if (ob.beta > 0.0) {
    const MatrixXd gap = sym - ob.beta * cc.M.transpose() * cc.M;
    Eigen::SelfAdjointEigenSolver<MatrixXd> eg(0.5 * (gap + gap.transpose()), Eigen::EigenvaluesOnly);
    if (eg.eigenvalues().minCoeff() < -tol * scale * scale) fail("cocoercivity");
  }
  (void)d;
}

Trajectory run_trajectory(const ConcreteInstance& inst, const AlgorithmSpec& alg, const MatrixXd& x0,
                          int K) {
  if (static_cast<int>(inst.components.size()) != alg.m())
    throw std::invalid_argument("run_trajectory: instance and algorithm disagree on m");
  for (int i = 1; i <= alg.m(); ++i) {
    const bool f = inst.components[i - 1].kind() == ComponentKind::Function;
    if (f != alg.is_func(i))
      throw std::invalid_argument("run_trajectory: component " + std::to_string(i) + " has the wrong kind");
  }
  const int d = inst.d, n = alg.n(), mb = alg.mbar();
  if (x0.rows() != n || x0.cols() != d) throw std::invalid_argument("run_trajectory: x0 has the wrong shape");
  if (alg.budget() && K > *alg.budget()) throw std::out_of_range("run_trajectory: K exceeds the budget");

  // Component of every stacked evaluation.
  std::vector<int> owner(mb);
  for (int i = 1; i <= alg.m(); ++i)
    for (int j = 0; j < alg.evals(i); ++j) owner[alg.eval_offset(i) + j] = i;

  Trajectory tr;
  tr.d = d;
  tr.y_star = inst.y_star;
  tr.u_star.resize(alg.m(), d);
  for (int i = 0; i < alg.m(); ++i) tr.u_star.row(i) = inst.u_star[i].transpose();
  tr.F_star = inst.F_star;
  tr.x.push_back(x0);

  for (int k = 0; k <= K; ++k) {
    const OutputMatrices o = alg.get_CD(k);
    for (int r = 0; r < mb; ++r)
      for (int s = r + 1; s < mb; ++s)
        if (o.D(r, s) != 0.0) throw std::invalid_argument("run_trajectory: D is not lower triangular");
    const MatrixXd base = o.C * tr.x[k];
    MatrixXd U = MatrixXd::Zero(mb, d), Y = MatrixXd::Zero(mb, d);
    for (int r = 0; r < mb; ++r) {
      VectorXd v = base.row(r).transpose();
      for (int s = 0; s < r; ++s) v += o.D(r, s) * U.row(s).transpose();
      const ConcreteComponent& cc = inst.components[owner[r] - 1];
      VectorXd y = (o.D(r, r) == 0.0) ? v : cc.solve_implicit(v, o.D(r, r));
      const VectorXd u = cc.apply(y);
      Y.row(r) = y.transpose();
      U.row(r) = u.transpose();
    }
    VectorXd F(alg.mbar_func());
    int pos = 0;
    for (int i : alg.func_indices())
      for (int j = 0; j < alg.evals(i); ++j)
        F(pos++) = inst.components[i - 1].value(Y.row(alg.eval_offset(i) + j).transpose());
    tr.u.push_back(U);
    tr.y.push_back(Y);
    tr.F.push_back(F);
    if (!alg.budget() || k < *alg.budget()) {
      const SystemMatrices s = alg.get_ABCD(k);
      tr.x.push_back(s.A * tr.x[k] + s.B * U);
    }
  }
  return tr;
}

MatrixXd zeta_stack(const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  if (hz.kmax >= static_cast<int>(tr.u.size()))
    throw std::out_of_range("zeta_stack: horizon beyond the trajectory");
  const int n = alg.n(), mb = alg.mbar(), m = alg.m();
  MatrixXd z(dims.dim_zeta, tr.d);
  z.topRows(n) = tr.x.at(hz.kmin);
  for (int k = hz.kmin; k <= hz.kmax; ++k) z.middleRows(u_column(alg, hz, k), mb) = tr.u[k];
  const int sc = star_column(alg, hz);
  if (m > 1) z.middleRows(sc, m - 1) = tr.u_star.topRows(m - 1);
  z.row(dims.dim_zeta - 1) = tr.y_star.transpose();
  return z;
}

VectorXd chi_stack(const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  if (hz.kmax >= static_cast<int>(tr.F.size()))
    throw std::out_of_range("chi_stack: horizon beyond the trajectory");
  VectorXd chi(dims.dim_chi);
  const int mf = alg.mbar_func();
  for (int k = hz.kmin; k <= hz.kmax; ++k) chi.segment((k - hz.kmin) * mf, mf) = tr.F[k];
  chi.tail(alg.m_func()) = tr.F_star;
  return chi;
}

double gram_quadratic(const MatrixXd& M, const MatrixXd& z) {
  if (M.rows() != z.rows() || M.cols() != z.rows())
    throw std::invalid_argument("gram_quadratic: size mismatch");
  return (z.transpose() * M * z).trace();
}

double evaluate_quadform(const MatrixXd& W, const VectorXd& w, const Trajectory& tr,
                         const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  if (W.rows() != dims.dim_zeta || W.cols() != dims.dim_zeta)
    throw std::invalid_argument("evaluate_quadform: matrix size mismatch");
  double v = gram_quadratic(W, zeta_stack(tr, alg, hz));
  if (w.size() > 0) {
    if (w.size() != dims.dim_chi) throw std::invalid_argument("evaluate_quadform: vector size mismatch");
    v += w.dot(chi_stack(tr, alg, hz));
  }
  return v;
}

}  // namespace lyapcert
