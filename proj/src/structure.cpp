#include "lyapcert/structure.hpp"

#include <stdexcept>
#include <string>

namespace lyapcert {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;

namespace {

void check_k(const Horizon& hz, int k, int upper, const char* who) {
  if (k < hz.kmin || k > upper)
    throw std::out_of_range(std::string(who) + ": k=" + std::to_string(k) + " outside [" +
                            std::to_string(hz.kmin) + ", " + std::to_string(upper) + "]");
}

void check_component(const AlgorithmSpec& alg, int i, int j) {
  if (i < 1 || i > alg.m())
    throw std::out_of_range("component index " + std::to_string(i) + " out of range");
  if (j < 1 || j > alg.evals(i))
    throw std::out_of_range("evaluation index " + std::to_string(j) + " out of range for component " +
                            std::to_string(i));
}

}  // namespace

void check_horizon(const Horizon& hz) {
  if (hz.kmin < 0 || hz.kmin > hz.kmax)
    throw std::invalid_argument("invalid horizon [" + std::to_string(hz.kmin) + ", " +
                                std::to_string(hz.kmax) + "]");
}

StackDims stack_dims(const AlgorithmSpec& alg, const Horizon& hz) {
  check_horizon(hz);
  return {alg.n() + hz.length() * alg.mbar() + alg.m(),
          hz.length() * alg.mbar_func() + alg.m_func()};
}

int u_column(const AlgorithmSpec& alg, const Horizon& hz, int k) {
  return alg.n() + (k - hz.kmin) * alg.mbar();
}

int star_column(const AlgorithmSpec& alg, const Horizon& hz) {
  return alg.n() + hz.length() * alg.mbar();
}

MatrixXd build_X(const AlgorithmSpec& alg, const Horizon& hz, int k) {
  const StackDims dims = stack_dims(alg, hz);
  check_k(hz, k, hz.kmax + 1, "build_X");
  const int n = alg.n();
  MatrixXd X = MatrixXd::Zero(n, dims.dim_zeta);
  // Column block of x^{kmin} carries A_{k-1}...A_{kmin}; the block of u^r
  // carries A_{k-1}...A_{r+1} B_r.
  MatrixXd transfer = MatrixXd::Identity(n, n);
  for (int r = k - 1; r >= hz.kmin; --r) {
    const SystemMatrices s = alg.get_ABCD(r);
    X.block(0, u_column(alg, hz, r), n, alg.mbar()) = transfer * s.B;
    transfer = transfer * s.A;
  }
  X.leftCols(n) = transfer;
  return X;
}

MatrixXd build_U(const AlgorithmSpec& alg, const Horizon& hz, int k) {
  const StackDims dims = stack_dims(alg, hz);
  check_k(hz, k, hz.kmax, "build_U");
  MatrixXd U = MatrixXd::Zero(alg.mbar(), dims.dim_zeta);
  U.block(0, u_column(alg, hz, k), alg.mbar(), alg.mbar()).setIdentity();
  return U;
}

MatrixXd build_Y(const AlgorithmSpec& alg, const Horizon& hz, int k) {
  check_k(hz, k, hz.kmax, "build_Y");
  const OutputMatrices o = alg.get_CD(k);
  return o.C * build_X(alg, hz, k) + o.D * build_U(alg, hz, k);
}

MatrixXd build_Y_star(const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  MatrixXd Y = MatrixXd::Zero(alg.m(), dims.dim_zeta);
  Y.col(dims.dim_zeta - 1).setOnes();
  return Y;
}

MatrixXd build_N(int m) {
  if (m < 1) throw std::invalid_argument("build_N: m must be >= 1");
  MatrixXd N = MatrixXd::Zero(m, m - 1);
  if (m > 1) {
    N.topRows(m - 1).setIdentity();
    N.row(m - 1).setConstant(-1.0);
  }
  return N;
}

MatrixXd build_U_star(const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  const int m = alg.m();
  MatrixXd U = MatrixXd::Zero(m, dims.dim_zeta);
  if (m > 1) U.block(0, star_column(alg, hz), m, m - 1) = build_N(m);
  return U;
}

RowVectorXd build_P(const AlgorithmSpec& alg, int i, int j) {
  check_component(alg, i, j);
  RowVectorXd P = RowVectorXd::Zero(alg.mbar());
  P(alg.eval_offset(i) + j - 1) = 1.0;
  return P;
}

RowVectorXd build_P_star(const AlgorithmSpec& alg, int i) {
  check_component(alg, i, 1);
  RowVectorXd P = RowVectorXd::Zero(alg.m());
  P(i - 1) = 1.0;
  return P;
}

RowVectorXd build_F(const AlgorithmSpec& alg, const Horizon& hz, int i, int j, int k) {
  const StackDims dims = stack_dims(alg, hz);
  check_component(alg, i, j);
  check_k(hz, k, hz.kmax, "build_F");
  if (!alg.is_func(i))
    throw std::invalid_argument("build_F: component " + std::to_string(i) + " is an operator");
  RowVectorXd F = RowVectorXd::Zero(dims.dim_chi);
  F((k - hz.kmin) * alg.mbar_func() + alg.func_eval_offset(i) + j - 1) = 1.0;
  return F;
}

RowVectorXd build_F_star(const AlgorithmSpec& alg, const Horizon& hz, int i) {
  const StackDims dims = stack_dims(alg, hz);
  check_component(alg, i, 1);
  if (!alg.is_func(i))
    throw std::invalid_argument("build_F_star: component " + std::to_string(i) + " is an operator");
  RowVectorXd F = RowVectorXd::Zero(dims.dim_chi);
  F(hz.length() * alg.mbar_func() + alg.func_rank(i) - 1) = 1.0;
  return F;
}

MatrixXd build_E(const InterpCondition& cond, int i, const AlgorithmSpec& alg, const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  const int p = static_cast<int>(cond.points.size());
  if (cond.M.rows() != 2 * p || cond.M.cols() != 2 * p)
    throw std::invalid_argument("build_E: condition matrix does not match its point count");
  MatrixXd E(2 * p, dims.dim_zeta);
  MatrixXd Ystar, Ustar;
  for (int r = 0; r < p; ++r) {
    const PointLabel& lbl = cond.points[r];
    if (lbl.star) {
      if (Ystar.size() == 0) {
        Ystar = build_Y_star(alg, hz);
        Ustar = build_U_star(alg, hz);
      }
      const RowVectorXd Ps = build_P_star(alg, i);
      E.row(r) = Ps * Ystar;
      E.row(p + r) = Ps * Ustar;
    } else {
      const RowVectorXd P = build_P(alg, i, lbl.j);
      E.row(r) = P * build_Y(alg, hz, lbl.k);
      E.row(p + r) = P * build_U(alg, hz, lbl.k);
    }
  }
  return E;
}

LiftedCondition lift_condition(const InterpCondition& cond, int i, const AlgorithmSpec& alg,
                               const Horizon& hz) {
  const StackDims dims = stack_dims(alg, hz);
  const MatrixXd E = build_E(cond, i, alg, hz);
  LiftedCondition out;
  out.kind = cond.kind;
  out.W = E.transpose() * cond.M * E;
  out.W = 0.5 * (out.W + out.W.transpose()).eval();
  if (cond.a.size() > 0) {
    if (cond.a.size() != static_cast<Eigen::Index>(cond.points.size()))
      throw std::invalid_argument("lift_condition: weight vector does not match its point count");
    out.f = Eigen::VectorXd::Zero(dims.dim_chi);
    for (std::size_t r = 0; r < cond.points.size(); ++r) {
      const PointLabel& lbl = cond.points[r];
      const RowVectorXd F = lbl.star ? build_F_star(alg, hz, i) : build_F(alg, hz, i, lbl.j, lbl.k);
      out.f += cond.a(r) * F.transpose();
    }
  }
  return out;
}

namespace {

// Long stack over hz (T u-blocks); window of `window` u-blocks; shift `shift`.
ShiftMaps shift_maps(const AlgorithmSpec& alg, const Horizon& hz, int window, int shift) {
  const StackDims full = stack_dims(alg, hz);
  const int n = alg.n(), mb = alg.mbar(), m = alg.m();
  const int mf = alg.mbar_func(), mfn = alg.m_func();
  const int rows = n + window * mb + m;
  ShiftMaps s;

  s.Theta_before = MatrixXd::Zero(rows, full.dim_zeta);
  s.Theta_before.topLeftCorner(n + window * mb, n + window * mb).setIdentity();
  s.Theta_before.bottomRightCorner(m, m).setIdentity();

  s.Theta_after = MatrixXd::Zero(rows, full.dim_zeta);
  s.Theta_after.topRows(n) = build_X(alg, hz, hz.kmin + shift);
  s.Theta_after.block(n, n + shift * mb, window * mb + m, window * mb + m).setIdentity();

  const int frows = window * mf + mfn;
  s.theta_before = MatrixXd::Zero(frows, full.dim_chi);
  s.theta_after = MatrixXd::Zero(frows, full.dim_chi);
  if (frows > 0) {
    s.theta_before.topLeftCorner(window * mf, window * mf).setIdentity();
    s.theta_before.bottomRightCorner(mfn, mfn).setIdentity();
    s.theta_after.block(0, shift * mf, frows, frows).setIdentity();
  }
  return s;
}

}  // namespace

ShiftMaps build_thetas(const AlgorithmSpec& alg, ShiftFamily family, int h, int alpha, int k) {
  switch (family) {
    case ShiftFamily::C1:
      if (h < 0 || alpha < 0) throw std::invalid_argument("build_thetas: h and alpha must be >= 0");
      return shift_maps(alg, {0, h + alpha + 1}, h + 1, alpha + 1);
    case ShiftFamily::C4:
      if (h < 0 || alpha < 0) throw std::invalid_argument("build_thetas: h and alpha must be >= 0");
      return shift_maps(alg, {0, h + alpha + 2}, h + alpha + 2, 1);
    case ShiftFamily::Dependent:
      if (k < 0) throw std::out_of_range("build_thetas: negative iteration");
      return shift_maps(alg, {k, k + 1}, 1, 1);
  }
  throw std::logic_error("unknown shift family");
}

}  // namespace lyapcert
