#pragma once

#include "lyapcert/algorithms.hpp"
#include "lyapcert/problem.hpp"
#include "lyapcert/structure.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace lyapcert {

// One concrete component on R^d.
//   function, quadratic:  f(y) = 0.5 y^T M y + b^T y + c,  M symmetric
//   function, sine:       f(y) = scale * sum_r (y_r^2 + 3 sin^2 y_r) + c   (non-convex, PL)
//   operator, affine:     G(y) = M y + b
struct ConcreteComponent {
  enum class Form { Quadratic, Sine, Affine };
  Form form = Form::Quadratic;
  Eigen::MatrixXd M;
  Eigen::VectorXd b;
  double c = 0.0;
  double scale = 1.0;

  ComponentKind kind() const {
    return form == Form::Affine ? ComponentKind::Operator : ComponentKind::Function;
  }
  double value(const Eigen::VectorXd& y) const;
  // Gradient for functions, operator value otherwise.
  Eigen::VectorXd apply(const Eigen::VectorXd& y) const;
  // y with y - step * apply(y) = v (step < 0 means the resolvent of -step).
  // Only for linear forms; throws for the sine function.
  Eigen::VectorXd solve_implicit(const Eigen::VectorXd& v, double step) const;
};

struct ConcreteInstance {
  int d = 0;
  std::vector<ConcreteComponent> components;
  Eigen::VectorXd y_star;
  std::vector<Eigen::VectorXd> u_star;  // one per component, summing to zero
  Eigen::VectorXd F_star;               // one per function component, in order
};

// Seeded sample of a concrete member of every component's class (intersections
// included); y_star and u_star are fixed first and the shifts chosen to match.
ConcreteInstance sample_instance(const InclusionProblem& problem, int d, std::uint64_t seed);

// Non-convex PL sample for a single-component problem whose classes are
// GradientDominated (mu_gd <= 1/32 * scale * 2) and possibly Smooth with L >= 8 * scale.
ConcreteInstance sample_sine_instance(const InclusionProblem& problem, int d, std::uint64_t seed);

// Checks the spectral constraints that make the component a class member;
// throws std::logic_error on violation (tolerance relative to 1e-10).
void check_membership(const ConcreteComponent& comp, const Component& cls);

// Iterates are stored row-wise: x[k] is n x d, u[k] and y[k] are mbar x d,
// F[k] has mbar_func entries (function components in order, evaluations in order).
struct Trajectory {
  int d = 0;
  std::vector<Eigen::MatrixXd> x;  // k = 0..last_state
  std::vector<Eigen::MatrixXd> u;  // k = 0..K
  std::vector<Eigen::MatrixXd> y;
  std::vector<Eigen::VectorXd> F;
  Eigen::VectorXd y_star;
  Eigen::MatrixXd u_star;  // m x d
  Eigen::VectorXd F_star;
};

// Runs iterations 0..K (evaluations at each k) and stores x^{K+1} when the
// algorithm defines A_K. x0 is n x d.
Trajectory run_trajectory(const ConcreteInstance& inst, const AlgorithmSpec& alg,
                          const Eigen::MatrixXd& x0, int K);

// zeta stack (dim_zeta x d) and chi stack for the horizon.
Eigen::MatrixXd zeta_stack(const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz);
Eigen::VectorXd chi_stack(const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz);

// trace(W * zeta zeta^T) + w^T chi over the horizon's stacks.
double evaluate_quadform(const Eigen::MatrixXd& W, const Eigen::VectorXd& w,
                         const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz);

// sum_{r,s} M_rs <z_r, z_s> for z given row-wise.
double gram_quadratic(const Eigen::MatrixXd& M, const Eigen::MatrixXd& z);

// Random orthogonal d x d matrix.
Eigen::MatrixXd random_orthogonal(int d, std::uint64_t seed);

}  // namespace lyapcert
