#pragma once

#include "lyapcert/algorithms.hpp"
#include "lyapcert/interpolation.hpp"

#include <Eigen/Dense>

namespace lyapcert {

// Iterations kmin..kmax (inclusive).
struct Horizon {
  int kmin = 0;
  int kmax = 0;

  int length() const { return kmax - kmin + 1; }
};

struct StackDims {
  int dim_zeta = 0;  // x^{kmin}, u^{kmin..kmax}, reduced u*, y*
  int dim_chi = 0;   // F^{kmin..kmax}, F*
};

void check_horizon(const Horizon& hz);
StackDims stack_dims(const AlgorithmSpec& alg, const Horizon& hz);

// Column layout of a zeta stack: [x | u^{kmin} | ... | u^{kmax} | u*_1..u*_{m-1} | y*].
int u_column(const AlgorithmSpec& alg, const Horizon& hz, int k);
int star_column(const AlgorithmSpec& alg, const Horizon& hz);

// k in [kmin, kmax+1]; n x dim_zeta.
Eigen::MatrixXd build_X(const AlgorithmSpec& alg, const Horizon& hz, int k);
// k in [kmin, kmax]; mbar x dim_zeta.
Eigen::MatrixXd build_Y(const AlgorithmSpec& alg, const Horizon& hz, int k);
Eigen::MatrixXd build_U(const AlgorithmSpec& alg, const Horizon& hz, int k);
// m x dim_zeta.
Eigen::MatrixXd build_Y_star(const AlgorithmSpec& alg, const Horizon& hz);
Eigen::MatrixXd build_U_star(const AlgorithmSpec& alg, const Horizon& hz);
// [I_{m-1}; -1^T], m x (m-1).
Eigen::MatrixXd build_N(int m);

// Unit rows; i and j are 1-based.
Eigen::RowVectorXd build_P(const AlgorithmSpec& alg, int i, int j);
Eigen::RowVectorXd build_P_star(const AlgorithmSpec& alg, int i);
Eigen::RowVectorXd build_F(const AlgorithmSpec& alg, const Horizon& hz, int i, int j, int k);
Eigen::RowVectorXd build_F_star(const AlgorithmSpec& alg, const Horizon& hz, int i);

struct LiftedCondition {
  ConditionKind kind = ConditionKind::Inequality;
  Eigen::MatrixXd W;  // dim_zeta x dim_zeta
  Eigen::VectorXd f;  // dim_chi, empty for operator conditions
};

// Rows P*Y for every point, then rows P*U for every point.
Eigen::MatrixXd build_E(const InterpCondition& cond, int i, const AlgorithmSpec& alg,
                        const Horizon& hz);
LiftedCondition lift_condition(const InterpCondition& cond, int i, const AlgorithmSpec& alg,
                               const Horizon& hz);

// Maps from a long stack to a window at its start (before) and to the window
// shifted forward by some iterations (after).
struct ShiftMaps {
  Eigen::MatrixXd Theta_before, Theta_after;
  Eigen::MatrixXd theta_before, theta_after;  // zero rows when no function components
};

enum class ShiftFamily { C1, C4, Dependent };

// C1: horizon [0, h+alpha+1], window h+1 u-blocks, shift alpha+1.
// C4: horizon [0, h+alpha+2], window h+alpha+2 u-blocks, shift 1.
// Dependent: horizon [k, k+1], window 1 u-block, shift 1 (h, alpha ignored).
ShiftMaps build_thetas(const AlgorithmSpec& alg, ShiftFamily family, int h, int alpha, int k = 0);

}  // namespace lyapcert
