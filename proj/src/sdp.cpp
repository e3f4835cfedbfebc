#include "lyapcert/sdp.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lyapcert {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int SymMatrixVar::id(int r, int c) const {
  if (r > c) std::swap(r, c);
  if (r < 0 || c >= size) throw std::out_of_range("matrix variable index");
  // Row r of the upper triangle starts after r rows of decreasing length.
  return ids[r * size - r * (r - 1) / 2 + (c - r)];
}

AffineMatrix AffineMatrix::congruence(const SymMatrixVar& Q, const MatrixXd& T) {
  if (T.rows() != Q.size) throw std::invalid_argument("congruence: size mismatch");
  AffineMatrix out(static_cast<int>(T.cols()));
  for (int r = 0; r < Q.size; ++r)
    for (int c = r; c < Q.size; ++c) {
      MatrixXd coeff = T.row(r).transpose() * T.row(c);
      if (r != c) coeff += coeff.transpose().eval();
      out.add_term(Q.id(r, c), coeff);
    }
  return out;
}

AffineMatrix& AffineMatrix::add_term(int var, const MatrixXd& coeff) {
  if (coeff.rows() != size() || coeff.cols() != size())
    throw std::invalid_argument("AffineMatrix::add_term: size mismatch");
  auto it = terms.find(var);
  if (it == terms.end())
    terms.emplace(var, coeff);
  else
    it->second += coeff;
  return *this;
}

AffineMatrix& AffineMatrix::add(const AffineMatrix& other, double s) {
  if (other.size() != size()) throw std::invalid_argument("AffineMatrix::add: size mismatch");
  constant += s * other.constant;
  for (const auto& [v, M] : other.terms) add_term(v, s * M);
  return *this;
}

AffineMatrix& AffineMatrix::scale(double s) {
  constant *= s;
  for (auto& [v, M] : terms) M *= s;
  return *this;
}

MatrixXd AffineMatrix::evaluate(const VectorXd& x) const {
  MatrixXd out = constant;
  for (const auto& [v, M] : terms) out += x(v) * M;
  return out;
}

std::vector<int> AffineMatrix::support() const {
  std::vector<int> s;
  for (const auto& [v, M] : terms)
    if (M.cwiseAbs().maxCoeff() > 0.0) s.push_back(v);
  return s;
}

AffineVector AffineVector::transpose_apply(const VectorVar& q, const MatrixXd& T) {
  if (T.rows() != q.size()) throw std::invalid_argument("transpose_apply: size mismatch");
  AffineVector out(static_cast<int>(T.cols()));
  for (int r = 0; r < q.size(); ++r) out.add_term(q.ids[r], T.row(r).transpose());
  return out;
}

AffineVector& AffineVector::add_term(int var, const VectorXd& coeff) {
  if (coeff.size() != size()) throw std::invalid_argument("AffineVector::add_term: size mismatch");
  auto it = terms.find(var);
  if (it == terms.end())
    terms.emplace(var, coeff);
  else
    it->second += coeff;
  return *this;
}

AffineVector& AffineVector::add(const AffineVector& other, double s) {
  if (other.size() != size()) throw std::invalid_argument("AffineVector::add: size mismatch");
  constant += s * other.constant;
  for (const auto& [v, c] : other.terms) add_term(v, s * c);
  return *this;
}

AffineVector& AffineVector::scale(double s) {
  constant *= s;
  for (auto& [v, c] : terms) c *= s;
  return *this;
}

VectorXd AffineVector::evaluate(const VectorXd& x) const {
  VectorXd out = constant;
  for (const auto& [v, c] : terms) out += x(v) * c;
  return out;
}

int SDPModel::add_scalar(const std::string& name, VarSign sign) {
  vars_.push_back({name, sign});
  return static_cast<int>(vars_.size()) - 1;
}

SymMatrixVar SDPModel::add_symmetric(const std::string& name, int size) {
  if (size < 1) throw std::invalid_argument("matrix variable size must be >= 1");
  SymMatrixVar Q;
  Q.size = size;
  for (int r = 0; r < size; ++r)
    for (int c = r; c < size; ++c)
      Q.ids.push_back(add_scalar(name + "[" + std::to_string(r) + "," + std::to_string(c) + "]"));
  return Q;
}

VectorVar SDPModel::add_vector(const std::string& name, int size) {
  VectorVar q;
  for (int r = 0; r < size; ++r) q.ids.push_back(add_scalar(name + "[" + std::to_string(r) + "]"));
  return q;
}

void SDPModel::add_lmi(AffineMatrix expr, std::string label) {
  if (expr.size() < 1) throw std::invalid_argument("empty LMI '" + label + "'");
  for (const auto& [v, M] : expr.terms)
    if (v < 0 || v >= num_variables())
      throw std::invalid_argument("LMI '" + label + "' references an unknown variable");
  lmis_.push_back({std::move(label), std::move(expr)});
}

void SDPModel::add_equality(AffineVector expr, std::string label) {
  for (const auto& [v, c] : expr.terms)
    if (v < 0 || v >= num_variables())
      throw std::invalid_argument("equality '" + label + "' references an unknown variable");
  eqs_.push_back({std::move(label), std::move(expr)});
}

void SDPModel::write_triplets(std::ostream& os) const {
  os.precision(17);
  os << "# variables\n";
  for (int v = 0; v < num_variables(); ++v)
    os << "# " << v + 1 << " " << vars_[v].name
       << (vars_[v].sign == VarSign::Nonnegative ? " nonneg" : " free") << "\n";
  if (objective_) os << "# minimize " << *objective_ + 1 << "\n";
  int cid = 0;
  for (const auto& lmi : lmis_) {
    const int s = lmi.expr.size();
    auto dump = [&](int var, const MatrixXd& M) {
      for (int c = 0; c < s; ++c)
        for (int r = c; r < s; ++r)
          if (M(r, c) != 0.0) os << cid << " " << var << " " << r << " " << c << " " << M(r, c) << "\n";
    };
    dump(0, lmi.expr.constant);
    for (const auto& [v, M] : lmi.expr.terms) dump(v + 1, M);
    ++cid;
  }
  for (const auto& eq : eqs_) {
    auto dump = [&](int var, const VectorXd& c) {
      for (int r = 0; r < c.size(); ++r)
        if (c(r) != 0.0) os << cid << " " << var << " " << r << " 0 " << c(r) << "\n";
    };
    dump(0, eq.expr.constant);
    for (const auto& [v, c] : eq.expr.terms) dump(v + 1, c);
    ++cid;
  }
  for (int v = 0; v < num_variables(); ++v)
    if (vars_[v].sign == VarSign::Nonnegative) os << cid++ << " " << v + 1 << " 0 0 1\n";
}

std::string status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Feasible: return "feasible";
    case VerdictStatus::Infeasible: return "infeasible";
    case VerdictStatus::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

MatrixXd Verdict::value(const SymMatrixVar& Q) const {
  MatrixXd M(Q.size, Q.size);
  for (int r = 0; r < Q.size; ++r)
    for (int c = 0; c < Q.size; ++c) M(r, c) = values(Q.id(r, c));
  return M;
}

VectorXd Verdict::value(const VectorVar& q) const {
  VectorXd v(q.size());
  for (int r = 0; r < q.size(); ++r) v(r) = values(q.ids[r]);
  return v;
}

RecheckReport recheck(const SDPModel& model, const VectorXd& values, double allowance) {
  if (values.size() != model.num_variables())
    throw std::invalid_argument("recheck: value vector has the wrong length");
  RecheckReport rep;
  rep.min_lmi_eigenvalue = std::numeric_limits<double>::infinity();
  rep.min_sign_value = std::numeric_limits<double>::infinity();
  bool ok = values.allFinite();
  // Each constraint is judged against allowance * max(1, its own magnitude),
  // the same absolute-plus-relative form conic solvers stop on.
  for (const auto& lmi : model.lmis()) {
    MatrixXd M = lmi.expr.evaluate(values);
    M = 0.5 * (M + M.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M, Eigen::EigenvaluesOnly);
    const double emin = es.eigenvalues().minCoeff();
    const double mag = std::max(1.0, M.cwiseAbs().maxCoeff());
    rep.min_lmi_eigenvalue = std::min(rep.min_lmi_eigenvalue, emin);
    rep.worst_relative_violation = std::max(rep.worst_relative_violation, -emin / mag);
    if (emin < -allowance * mag) ok = false;
  }
  for (const auto& eq : model.equalities()) {
    const VectorXd r = eq.expr.evaluate(values);
    if (r.size() == 0) continue;
    double mag = eq.expr.constant.size() ? eq.expr.constant.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& [v, coeff] : eq.expr.terms) mag = std::max(mag, coeff.cwiseAbs().maxCoeff() * std::abs(values(v)));
    mag = std::max(1.0, mag);
    const double res = r.cwiseAbs().maxCoeff();
    rep.max_equality_residual = std::max(rep.max_equality_residual, res);
    rep.worst_relative_violation = std::max(rep.worst_relative_violation, res / mag);
    if (res > allowance * mag) ok = false;
  }
  for (int v = 0; v < model.num_variables(); ++v)
    if (model.variables()[v].sign == VarSign::Nonnegative)
      rep.min_sign_value = std::min(rep.min_sign_value, values(v));
  if (model.lmis().empty()) rep.min_lmi_eigenvalue = 0.0;
  if (!std::isfinite(rep.min_sign_value)) rep.min_sign_value = 0.0;
  if (rep.min_sign_value < -allowance) ok = false;
  rep.passed = ok;
  return rep;
}

namespace {

struct Translation {
  ConicProblem problem;
  int margin_var = -1;
};

// Feasibility models get an extra variable t (maximised, t <= 1) subtracted
// from the diagonal of every LMI.
Translation translate(const SDPModel& model) {
  Translation tr;
  ConicProblem& cp = tr.problem;
  const int nv = model.num_variables();
  const bool use_margin = !model.objective() && !model.lmis().empty();
  cp.num_vars = nv + (use_margin ? 1 : 0);
  if (use_margin) tr.margin_var = nv;

  std::vector<double> b;
  int row = 0;

  for (const auto& eq : model.equalities()) {
    for (int r = 0; r < eq.expr.size(); ++r) {
      for (const auto& [v, c] : eq.expr.terms)
        if (c(r) != 0.0) cp.A.emplace_back(row, v, c(r));
      b.push_back(-eq.expr.constant(r));
      ++row;
    }
  }
  cp.zero = row;

  for (int v = 0; v < nv; ++v)
    if (model.variables()[v].sign == VarSign::Nonnegative) {
      cp.A.emplace_back(row++, v, -1.0);
      b.push_back(0.0);
    }
  if (use_margin) {
    cp.A.emplace_back(row++, tr.margin_var, 1.0);
    b.push_back(1.0);
  }
  cp.nonneg = row - cp.zero;

  const double root2 = std::sqrt(2.0);
  for (const auto& lmi : model.lmis()) {
    const int s = lmi.expr.size();
    cp.psd.push_back(s);
    for (int c = 0; c < s; ++c)
      for (int r = 0; r <= c; ++r) {
        const double w = (r == c) ? 1.0 : root2;
        for (const auto& [v, M] : lmi.expr.terms) {
          const double val = 0.5 * (M(r, c) + M(c, r));
          if (val != 0.0) cp.A.emplace_back(row, v, -w * val);
        }
        if (use_margin && r == c) cp.A.emplace_back(row, tr.margin_var, 1.0);
        b.push_back(w * 0.5 * (lmi.expr.constant(r, c) + lmi.expr.constant(c, r)));
        ++row;
      }
  }
  cp.b = Eigen::Map<VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  cp.c = VectorXd::Zero(cp.num_vars);
  if (model.objective())
    cp.c(*model.objective()) = 1.0;
  else if (use_margin)
    cp.c(tr.margin_var) = -1.0;
  return tr;
}

double coefficient_span(const ConicProblem& cp) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& t : cp.A) {
    const double a = std::abs(t.value());
    if (a > 0.0) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  for (int r = 0; r < cp.b.size(); ++r) {
    const double a = std::abs(cp.b(r));
    if (a > 0.0) {
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  return (hi > 0.0 && std::isfinite(lo)) ? hi / lo : 0.0;
}

}  // namespace

namespace {

// One backend call judged against a fixed re-check allowance.
Verdict attempt(const SDPModel& model, const Translation& tr, const ConicBackend& backend,
                const SolverSettings& settings, double allowance) {
  Verdict verdict;
  Diagnostics& dg = verdict.diagnostics;
  const ConicResult res = backend.solve(tr.problem, settings);
  dg.backend_status = res.detail;
  dg.iterations = res.iterations;
  dg.primal_residual = res.primal_residual;
  dg.dual_residual = res.dual_residual;
  dg.solve_seconds = res.solve_seconds;

  using S = ConicResult::Status;
  if (res.status == S::Infeasible) {
    verdict.status = VerdictStatus::Infeasible;
    return verdict;
  }
  if ((res.status != S::Solved && res.status != S::Inaccurate) ||
      res.x.size() != tr.problem.num_vars) {
    verdict.status = VerdictStatus::NumericalFailure;
    return verdict;
  }

  const VectorXd values = res.x.head(model.num_variables());
  const RecheckReport rep = recheck(model, values, allowance);
  dg.min_lmi_eigenvalue = rep.min_lmi_eigenvalue;
  dg.max_equality_residual = rep.max_equality_residual;
  dg.min_sign_value = rep.min_sign_value;
  dg.recheck_passed = rep.passed;
  if (tr.margin_var >= 0) dg.margin = res.x(tr.margin_var);

  if (rep.passed) {
    verdict.status = VerdictStatus::Feasible;
    verdict.values = values;
    if (model.objective()) verdict.objective = values(*model.objective());
    return verdict;
  }
  if (tr.margin_var >= 0 && res.status == S::Solved && dg.margin < -allowance) {
    verdict.status = VerdictStatus::Infeasible;
    return verdict;
  }
  // Unconverged, but both objectives put the best margin clearly below zero
  // (objective is -t, the dual value bounds it from below).
  if (tr.margin_var >= 0 && res.status == S::Inaccurate && -res.primal_objective < -1e-6 &&
      -res.dual_objective < -1e-6) {
    verdict.status = VerdictStatus::Infeasible;
    dg.warnings.push_back("infeasible verdict from an inaccurate solve");
    return verdict;
  }
  verdict.status = VerdictStatus::NumericalFailure;
  return verdict;
}

}  // namespace

Verdict solve(const SDPModel& model, const SolverSettings& settings, const ConicBackend* backend) {
  std::unique_ptr<ConicBackend> owned;
  if (!backend) {
    owned = make_default_backend();
    backend = owned.get();
  }
  if (!backend) throw std::runtime_error("no conic backend available");

  const Translation tr = translate(model);
  const double allowance = 10.0 * settings.tol;
  std::vector<std::string> warnings;
  const double span = coefficient_span(tr.problem);
  if (span > 1e8) {
    std::ostringstream os;
    os << "coefficient magnitudes span " << span << " (> 1e8)";
    warnings.push_back(os.str());
  }

  // Certificates sit on the boundary of the PSD cone, so an interior-point
  // run can stall just short of the allowance. Undecided runs are repeated
  // with looser backend tolerances; the allowance itself never changes.
  Verdict verdict;
  for (double loosen : {1.0, 10.0, 100.0}) {
    SolverSettings s = settings;
    s.tol = settings.tol * loosen;
    verdict = attempt(model, tr, *backend, s, allowance);
    if (verdict.status != VerdictStatus::NumericalFailure) break;
    warnings.push_back("undecided at backend tolerance " + std::to_string(0.1 * s.tol) + " (" +
                       verdict.diagnostics.backend_status + ")");
  }
  verdict.diagnostics.coefficient_span = span;
  verdict.diagnostics.warnings.insert(verdict.diagnostics.warnings.begin(), warnings.begin(), warnings.end());
  return verdict;
}

void check_compatible(const InclusionProblem& problem, const AlgorithmSpec& alg) {
  if (problem.m() != alg.m())
    throw std::invalid_argument("problem has " + std::to_string(problem.m()) +
                                " components but algorithm '" + alg.name() + "' expects " +
                                std::to_string(alg.m()));
  if (problem.func_indices != alg.func_indices())
    throw std::invalid_argument("function/operator split of the problem does not match algorithm '" +
                                alg.name() + "'");
}

DpepBlock assemble_dpep(SDPModel& model, const QuadForm& objective, const Horizon& hz,
                        const InclusionProblem& problem, const AlgorithmSpec& alg,
                        const std::string& label) {
  check_compatible(problem, alg);
  const StackDims dims = stack_dims(alg, hz);
  if (objective.W.size() != dims.dim_zeta)
    throw std::invalid_argument(label + ": objective matrix has size " +
                                std::to_string(objective.W.size()) + ", expected " +
                                std::to_string(dims.dim_zeta));
  const bool with_values = problem.m_func() > 0;
  if (with_values && objective.w.size() != 0 && objective.w.size() != dims.dim_chi)
    throw std::invalid_argument(label + ": objective vector has size " +
                                std::to_string(objective.w.size()) + ", expected " +
                                std::to_string(dims.dim_chi));
  if (!with_values && objective.w.size() != 0)
    throw std::invalid_argument(label + ": objective has a value part but no function components");

  DpepBlock block;
  AffineMatrix lmi = objective.W;
  lmi.scale(-1.0);
  AffineVector eq(dims.dim_chi);
  if (with_values && objective.w.size() > 0) eq.add(objective.w, -1.0);

  for (int i = 1; i <= problem.m(); ++i) {
    const auto conds = enumerate_conditions(problem.component(i), hz.kmin, hz.kmax, alg.evals(i));
    int idx = 0;
    for (const auto& cond : conds) {
      const LiftedCondition lifted = lift_condition(cond, i, alg, hz);
      const VarSign sign =
          cond.kind == ConditionKind::Inequality ? VarSign::Nonnegative : VarSign::Free;
      const int v = model.add_scalar(label + ".mult[" + std::to_string(i) + "," +
                                         std::to_string(idx++) + "]",
                                     sign);
      block.multipliers.push_back(v);
      lmi.add_term(v, lifted.W);
      if (lifted.f.size() > 0) eq.add_term(v, lifted.f);
    }
  }
  model.add_lmi(std::move(lmi), label + ".lmi");
  block.lmi_index = static_cast<int>(model.lmis().size()) - 1;
  if (with_values) {
    model.add_equality(std::move(eq), label + ".values");
    block.equality_index = static_cast<int>(model.equalities().size()) - 1;
  }
  return block;
}

}  // namespace lyapcert
