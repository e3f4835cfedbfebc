#pragma once

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lyapcert {

enum class ClassTag {
  Convex,
  StronglyConvex,
  WeaklyConvex,
  Smooth,
  SmoothConvex,
  SmoothStronglyConvex,
  SmoothWeaklyConvex,
  GradientDominated,
  MaximallyMonotone,
  StronglyMonotone,
  LipschitzOperator,
  Cocoercive,
};

enum class ComponentKind { Function, Operator };

std::string tag_name(ClassTag tag);
// Throws std::invalid_argument for unknown names.
ClassTag parse_tag(const std::string& name);

// Curvature pair of the function class F_{mu,L}. An absent upper bound means
// L = +infinity; it is never encoded as a large float.
struct CurvatureBounds {
  double mu = 0.0;
  std::optional<double> L;
};

// A function or operator class. Parameter names: "mu", "L", "mu_tilde",
// "mu_gd", "beta" (only the ones the tag uses).
class ComponentClass {
public:
  ComponentClass(ClassTag tag, std::map<std::string, double> params = {});

  static ComponentClass convex();
  static ComponentClass strongly_convex(double mu);
  static ComponentClass weakly_convex(double mu_tilde);
  static ComponentClass smooth(double L);
  static ComponentClass smooth_convex(double L);
  static ComponentClass smooth_strongly_convex(double mu, double L);
  static ComponentClass smooth_weakly_convex(double mu_tilde, double L);
  static ComponentClass gradient_dominated(double mu_gd);
  static ComponentClass maximally_monotone();
  static ComponentClass strongly_monotone(double mu);
  static ComponentClass lipschitz_operator(double L);
  static ComponentClass cocoercive(double beta);

  ClassTag tag() const { return tag_; }
  ComponentKind kind() const;
  const std::map<std::string, double>& params() const { return params_; }
  double param(const std::string& name) const;

  // Only meaningful for function tags other than GradientDominated.
  CurvatureBounds curvature() const;

  std::string describe() const;

private:
  ClassTag tag_;
  std::map<std::string, double> params_;
};

// A point of the sampled data: either evaluation j (1-based) at iteration k,
// or the solution point.
struct PointLabel {
  bool star = false;
  int j = 0;
  int k = 0;

  static PointLabel at(int j, int k) { return {false, j, k}; }
  static PointLabel solution() { return {true, 0, 0}; }
  bool operator==(const PointLabel&) const = default;
};

enum class ConditionKind { Inequality, Equality };

// Quadratic data for one pair of points ordered as (y_a, y_b, u_a, u_b).
// The condition reads a^T (F_a, F_b) + trace(M * Gram) <= 0 (or = 0).
struct PairCondition {
  Eigen::VectorXd a;  // empty for operator classes
  Eigen::MatrixXd M;
  ConditionKind kind = ConditionKind::Inequality;
  bool swap_symmetric = false;
};

struct InterpCondition {
  ConditionKind kind = ConditionKind::Inequality;
  std::vector<PointLabel> points;
  Eigen::VectorXd a;  // empty for operator classes
  Eigen::MatrixXd M;
};

// Throws std::invalid_argument("no interpolation condition registered ...")
// for tags without a plain pairwise condition (GradientDominated).
PairCondition pairwise_condition(const ComponentClass& cls);

// Two conditions, both pairing a point (first) with the solution (second).
std::vector<PairCondition> gradient_dominated_conditions(double mu_gd);

class Component;

// Conditions over the labels {(j,k) : 1<=j<=evals, kmin<=k<=kmax} and the
// solution label, in a fixed deterministic order.
std::vector<InterpCondition> enumerate_conditions(const Component& comp,
                                                  int kmin, int kmax,
                                                  int evals);

// a^T F + sum_{r,s} M_rs <z_r, z_s> with z = (y_1..y_p, u_1..u_p).
double evaluate_condition(const Eigen::VectorXd& a, const Eigen::MatrixXd& M,
                          const std::vector<Eigen::VectorXd>& ys,
                          const std::vector<Eigen::VectorXd>& us,
                          const Eigen::VectorXd& F);

}  // namespace lyapcert
