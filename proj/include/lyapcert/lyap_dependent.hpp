#pragma once

#include "lyapcert/algorithms.hpp"
#include "lyapcert/problem.hpp"
#include "lyapcert/sdp.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace lyapcert {

// V(k) uses the stack (x^k, u^k, u*, y*) and (F^k, F*).
struct StepForm {
  Eigen::MatrixXd Q;
  Eigen::VectorXd q;  // empty without function components
};

struct DepParams {
  int K = 1;
  StepForm first;  // V(0)
  StepForm last;   // V(K)
};

int step_matrix_size(const AlgorithmSpec& alg);
int step_vector_size(const AlgorithmSpec& alg);

// Constructors on the single-iteration horizon [k, k]; i, j 1-based.
StepForm dep_params_funcval(const AlgorithmSpec& alg, int k, int j = 1);
StepForm dep_params_distance(const AlgorithmSpec& alg, int k, int i = 1, int j = 1);
StepForm dep_params_fpr(const AlgorithmSpec& alg, int k);
StepForm dep_params_optimality(const AlgorithmSpec& alg, int k);

struct DepResult {
  Verdict verdict;
  std::optional<double> c;
  std::vector<StepForm> intermediate;  // V(1)..V(K-1) when feasible
};

struct DepModel {
  SDPModel model;
  int c = -1;
  std::vector<std::optional<SymMatrixVar>> Q;  // index k = 1..K-1 used
  std::vector<std::optional<VectorVar>> q;
};
DepModel build_dependent_model(const InclusionProblem& problem, const AlgorithmSpec& alg,
                               const DepParams& params);

DepResult verify_dependent(const InclusionProblem& problem, const AlgorithmSpec& alg,
                           const DepParams& params, const SolverSettings& settings = {});

}  // namespace lyapcert
