#pragma once

#include "lyapcert/algorithms.hpp"
#include "lyapcert/problem.hpp"
#include "lyapcert/sdp.hpp"

#include <Eigen/Dense>

#include <optional>

namespace lyapcert {

// V(P,p,k) uses the stack (x^k, u^k..u^{k+h}, u*, y*) and F^k..F^{k+h}, F*;
// R(T,t,k) uses u up to k+h+alpha+1. Vectors are empty when the algorithm
// has no function components.
struct IndepParams {
  Eigen::MatrixXd P;
  Eigen::VectorXd p;
  Eigen::MatrixXd T;
  Eigen::VectorXd t;
  double rho = 1.0;
  int h = 0;
  int alpha = 0;
  bool Q_equals_P = false;
  bool S_equals_T = false;
  bool q_equals_p = false;
  bool s_equals_t = false;
  bool remove_C2 = false;
  bool remove_C3 = false;
  bool remove_C4 = true;
};

// Sizes of the V and R stacks for the given algorithm and (h, alpha).
int v_matrix_size(const AlgorithmSpec& alg, int h);
int v_vector_size(const AlgorithmSpec& alg, int h);
int r_matrix_size(const AlgorithmSpec& alg, int h, int alpha);
int r_vector_size(const AlgorithmSpec& alg, int h, int alpha);

// i, j are 1-based; tau is an iteration offset.
IndepParams params_linear_distance(const AlgorithmSpec& alg, int h = 0, int alpha = 0, int i = 1,
                                   int j = 1, int tau = 0);
IndepParams params_linear_funcval(const AlgorithmSpec& alg, int h = 0, int alpha = 0, int j = 1,
                                  int tau = 0);
IndepParams params_sublinear_optimality(const AlgorithmSpec& alg, int h = 0, int alpha = 0,
                                        int tau = 0);
IndepParams params_sublinear_fpr(const AlgorithmSpec& alg, int h = 0, int alpha = 0, int tau = 0);
IndepParams params_sublinear_funcval(const AlgorithmSpec& alg, int h = 0, int alpha = 0, int j = 1,
                                     int tau = 0);

struct IndepCertificate {
  Eigen::MatrixXd Q, S;
  Eigen::VectorXd q, s;
};

struct IndepResult {
  Verdict verdict;
  std::optional<IndepCertificate> certificate;  // present iff feasible
};

// Builds the model without solving it; exposed for inspection and dumps.
struct IndepModel {
  SDPModel model;
  std::optional<SymMatrixVar> Q, S;
  std::optional<VectorVar> q, s;
};
IndepModel build_independent_model(const InclusionProblem& problem, const AlgorithmSpec& alg,
                                   const IndepParams& params);

IndepResult verify_independent(const InclusionProblem& problem, const AlgorithmSpec& alg,
                               const IndepParams& params, const SolverSettings& settings = {});

struct BisectionResult {
  VerdictStatus status = VerdictStatus::Infeasible;  // Feasible when rho was found
  std::optional<double> rho;
  double bracket_low = 0.0;
  double bracket_high = 1.0;
  int solves = 0;
  std::optional<IndepResult> at_rho;  // certificate at the returned rho
};

// Smallest rho in [lower, upper] for which verify_independent succeeds, up to
// `tol`. Returns no rho when upper is already infeasible. A numerical failure
// is retried once at a perturbed point inside the bracket, then aborts.
// Certificates near the threshold have margins of order (rho - rho*) times a
// modest slope, so brackets much below 1e-5 are not decidable in double
// precision; the default stays clear of that.
BisectionResult bisect_rho(const InclusionProblem& problem, const AlgorithmSpec& alg,
                           IndepParams params, double lower = 0.0, double upper = 1.0,
                           double tol = 1e-4, const SolverSettings& settings = {});

}  // namespace lyapcert
