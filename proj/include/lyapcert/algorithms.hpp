#pragma once

#include <Eigen/Dense>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lyapcert {

struct SystemMatrices {
  Eigen::MatrixXd A, B, C, D;
};

struct OutputMatrices {
  Eigen::MatrixXd C, D;
};

// x^{k+1} = A_k x^k + B_k u^k,  y^k = C_k x^k + D_k u^k.
// Evaluations are stacked component by component: the u rows of component i
// occupy evaluations 1..mbar_i of that component.
class AlgorithmSpec {
public:
  using Provider = std::function<SystemMatrices(int k)>;
  using OutputProvider = std::function<OutputMatrices(int k)>;

  // `output` may be empty; then the output map is read from `provider`.
  // With a budget K, get_ABCD accepts k < K and get_CD accepts k <= K.
  AlgorithmSpec(std::string name, int n, std::vector<int> evals, std::vector<int> func_indices,
                Provider provider, bool stationary, std::optional<int> budget = std::nullopt,
                OutputProvider output = {});

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(evals_.size()); }
  int mbar() const { return mbar_; }
  int mbar_func() const { return mbar_func_; }
  int evals(int i) const { return evals_.at(i - 1); }
  const std::vector<int>& evals() const { return evals_; }
  const std::vector<int>& func_indices() const { return func_; }
  const std::vector<int>& op_indices() const { return op_; }
  int m_func() const { return static_cast<int>(func_.size()); }
  bool is_func(int i) const;
  // Rank of component i among the function components (1-based).
  int func_rank(int i) const;
  // Offset of the first evaluation of component i in the stacked u.
  int eval_offset(int i) const;
  // Offset of the first evaluation of function component i in a stacked F.
  int func_eval_offset(int i) const;

  bool stationary() const { return stationary_; }
  std::optional<int> budget() const { return budget_; }

  SystemMatrices get_ABCD(int k) const;
  OutputMatrices get_CD(int k) const;

  // Same matrices, different function/operator split (sizes must agree).
  AlgorithmSpec with_partition(std::vector<int> func_indices) const;

private:
  void check_shapes(const Eigen::MatrixXd& M, int rows, int cols, const char* what, int k) const;

  std::string name_;
  int n_;
  std::vector<int> evals_;
  std::vector<int> func_;
  std::vector<int> op_;
  int mbar_ = 0;
  int mbar_func_ = 0;
  Provider provider_;
  OutputProvider output_;
  bool stationary_;
  std::optional<int> budget_;
};

AlgorithmSpec gradient_method(double gamma);
AlgorithmSpec heavy_ball(double gamma, double delta);
AlgorithmSpec nesterov_momentum(double gamma, double delta);
AlgorithmSpec nesterov_fgm(double gamma);
AlgorithmSpec optimized_gradient_method(double L, int K);
AlgorithmSpec douglas_rachford(double gamma, double lambda);
AlgorithmSpec chambolle_pock(double tau, double sigma, double theta);

// Names: gradient, heavy_ball, nesterov_momentum, nesterov_fgm, ogm,
// douglas_rachford, chambolle_pock. Parameter keys: gamma, delta, L, K,
// lambda, tau, sigma, theta. When func_indices is given, it replaces the
// default function/operator split.
AlgorithmSpec make_algorithm(const std::string& name, const std::map<std::string, double>& params,
                             std::optional<std::vector<int>> func_indices = std::nullopt);

// lambda_0 = 1, lambda_{k+1} = (1 + sqrt(1 + 4 lambda_k^2)) / 2; entries 0..count-1.
std::vector<double> fgm_lambda_sequence(int count);
// theta_0..theta_K of the optimized gradient method with budget K.
std::vector<double> ogm_theta_sequence(int K);

}  // namespace lyapcert
