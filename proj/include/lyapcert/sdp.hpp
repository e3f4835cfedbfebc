#pragma once

#include "lyapcert/algorithms.hpp"
#include "lyapcert/problem.hpp"
#include "lyapcert/structure.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lyapcert {

enum class VarSign { Free, Nonnegative };

struct SymMatrixVar {
  int size = 0;
  std::vector<int> ids;  // upper triangle, row by row

  int id(int r, int c) const;
};

struct VectorVar {
  std::vector<int> ids;
  int size() const { return static_cast<int>(ids.size()); }
};

// constant + sum_v x_v * terms[v], kept symmetric.
struct AffineMatrix {
  Eigen::MatrixXd constant;
  std::map<int, Eigen::MatrixXd> terms;

  AffineMatrix() = default;
  explicit AffineMatrix(int size) : constant(Eigen::MatrixXd::Zero(size, size)) {}
  static AffineMatrix from_constant(const Eigen::MatrixXd& M) {
    AffineMatrix a;
    a.constant = M;
    return a;
  }
  // T^T Q T for a matrix variable Q.
  static AffineMatrix congruence(const SymMatrixVar& Q, const Eigen::MatrixXd& T);

  int size() const { return static_cast<int>(constant.rows()); }
  AffineMatrix& add_term(int var, const Eigen::MatrixXd& coeff);
  AffineMatrix& add(const AffineMatrix& other, double scale = 1.0);
  AffineMatrix& scale(double s);
  Eigen::MatrixXd evaluate(const Eigen::VectorXd& x) const;
  // Largest variable degree is 1 by construction; this reports which
  // variables appear with a non-zero coefficient.
  std::vector<int> support() const;
};

struct AffineVector {
  Eigen::VectorXd constant;
  std::map<int, Eigen::VectorXd> terms;

  AffineVector() = default;
  explicit AffineVector(int size) : constant(Eigen::VectorXd::Zero(size)) {}
  static AffineVector from_constant(const Eigen::VectorXd& v) {
    AffineVector a;
    a.constant = v;
    return a;
  }
  // T^T q for a vector variable q.
  static AffineVector transpose_apply(const VectorVar& q, const Eigen::MatrixXd& T);

  int size() const { return static_cast<int>(constant.size()); }
  AffineVector& add_term(int var, const Eigen::VectorXd& coeff);
  AffineVector& add(const AffineVector& other, double scale = 1.0);
  AffineVector& scale(double s);
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;
};

// Quadratic-plus-linear functional over a zeta/chi stack.
struct QuadForm {
  AffineMatrix W;
  AffineVector w;  // size 0 when there are no function components
};

struct Variable {
  std::string name;
  VarSign sign = VarSign::Free;
};

struct LmiConstraint {
  std::string label;
  AffineMatrix expr;  // required PSD
};

struct EqualityConstraint {
  std::string label;
  AffineVector expr;  // required zero
};

class SDPModel {
public:
  int add_scalar(const std::string& name, VarSign sign = VarSign::Free);
  SymMatrixVar add_symmetric(const std::string& name, int size);
  VectorVar add_vector(const std::string& name, int size);

  void add_lmi(AffineMatrix expr, std::string label);
  void add_equality(AffineVector expr, std::string label);
  void minimize(int var) { objective_ = var; }

  int num_variables() const { return static_cast<int>(vars_.size()); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<LmiConstraint>& lmis() const { return lmis_; }
  const std::vector<EqualityConstraint>& equalities() const { return eqs_; }
  std::optional<int> objective() const { return objective_; }

  // One line per non-zero entry: "constraint-id variable-id row col value".
  // Constraints are numbered LMIs first, then equalities, then sign
  // constraints (one per non-negative variable), starting at 0. Variable id 0
  // is the constant term and variable v is written as v+1. Equality and sign
  // constraints use col 0. A header comment lists variable names.
  void write_triplets(std::ostream& os) const;

private:
  std::vector<Variable> vars_;
  std::vector<LmiConstraint> lmis_;
  std::vector<EqualityConstraint> eqs_;
  std::optional<int> objective_;
};

enum class VerdictStatus { Feasible, Infeasible, NumericalFailure };
std::string status_name(VerdictStatus s);

struct SolverSettings {
  double tol = 1e-9;        // feasibility tolerance; the re-check allows 10x
  int max_iters = 200;
  double time_limit_secs = 0.0;  // 0 means none
  bool verbose = false;
};

struct Diagnostics {
  std::string backend_status;
  int iterations = 0;
  double solve_seconds = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double margin = 0.0;           // optimal LMI margin for feasibility solves
  double min_lmi_eigenvalue = 0.0;
  double max_equality_residual = 0.0;
  double min_sign_value = 0.0;
  bool recheck_passed = false;
  double coefficient_span = 0.0;  // max/min non-zero magnitude
  std::vector<std::string> warnings;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::NumericalFailure;
  Eigen::VectorXd values;  // one entry per model variable; empty unless feasible
  std::optional<double> objective;
  Diagnostics diagnostics;

  bool feasible() const { return status == VerdictStatus::Feasible; }
  double value(int id) const { return values(id); }
  Eigen::MatrixXd value(const SymMatrixVar& Q) const;
  Eigen::VectorXd value(const VectorVar& q) const;
};

// Standard conic form: minimize c^T x s.t. A x + s = b with s in
// {0}^zero x R_+^nonneg x PSD(psd[0]) x PSD(psd[1]) ...; semidefinite blocks
// are vectorised as the upper triangle column by column, off-diagonal
// entries scaled by sqrt(2).
struct ConicProblem {
  int num_vars = 0;
  int zero = 0;
  int nonneg = 0;
  std::vector<int> psd;
  std::vector<Eigen::Triplet<double>> A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct ConicResult {
  enum class Status { Solved, Infeasible, Unbounded, Inaccurate, Failed } status = Status::Failed;
  std::string detail;
  Eigen::VectorXd x;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  double solve_seconds = 0.0;
};

class ConicBackend {
public:
  virtual ~ConicBackend() = default;
  virtual std::string name() const = 0;
  virtual ConicResult solve(const ConicProblem& problem, const SolverSettings& settings) const = 0;
};

// Interior-point adapter over the Clarabel solver.
std::unique_ptr<ConicBackend> make_default_backend();

// Independent substitution of `values` into every constraint of the model.
struct RecheckReport {
  double min_lmi_eigenvalue = 0.0;
  double max_equality_residual = 0.0;
  double min_sign_value = 0.0;
  double worst_relative_violation = 0.0;  // violation over constraint magnitude
  bool passed = false;
};
// Substitutes values into every constraint. LMIs and equalities may be off
// by allowance * max(1, constraint magnitude); signs by allowance.
RecheckReport recheck(const SDPModel& model, const Eigen::VectorXd& values, double allowance);

Verdict solve(const SDPModel& model, const SolverSettings& settings = {},
              const ConicBackend* backend = nullptr);

// Multipliers registered for one D-PEP block.
struct DpepBlock {
  std::vector<int> multipliers;
  int lmi_index = -1;
  int equality_index = -1;  // -1 when no function components
};

// Adds -W + sum lambda W_lifted PSD and -w + sum lambda f_lifted = 0 for the
// interpolation conditions of every component over the horizon.
DpepBlock assemble_dpep(SDPModel& model, const QuadForm& objective, const Horizon& hz,
                        const InclusionProblem& problem, const AlgorithmSpec& alg,
                        const std::string& label);

// Throws when the algorithm's component layout does not fit the problem.
void check_compatible(const InclusionProblem& problem, const AlgorithmSpec& alg);

}  // namespace lyapcert
