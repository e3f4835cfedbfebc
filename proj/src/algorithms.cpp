#include "lyapcert/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lyapcert {

using Eigen::MatrixXd;

AlgorithmSpec::AlgorithmSpec(std::string name, int n, std::vector<int> eval_counts,
                             std::vector<int> func_indices, Provider provider, bool stationary,
                             std::optional<int> budget, OutputProvider output)
    : name_(std::move(name)),
      n_(n),
      evals_(std::move(eval_counts)),
      func_(std::move(func_indices)),
      provider_(std::move(provider)),
      output_(std::move(output)),
      stationary_(stationary),
      budget_(budget) {
  if (n_ < 1) throw std::invalid_argument(name_ + ": state dimension must be >= 1");
  if (evals_.empty()) throw std::invalid_argument(name_ + ": needs at least one component");
  for (int e : evals_)
    if (e < 1) throw std::invalid_argument(name_ + ": evaluation counts must be >= 1");
  std::sort(func_.begin(), func_.end());
  for (std::size_t r = 0; r < func_.size(); ++r) {
    if (func_[r] < 1 || func_[r] > m())
      throw std::invalid_argument(name_ + ": function index out of range");
    if (r > 0 && func_[r] == func_[r - 1])
      throw std::invalid_argument(name_ + ": repeated function index");
  }
  for (int i = 1; i <= m(); ++i)
    if (!is_func(i)) op_.push_back(i);
  for (int i = 1; i <= m(); ++i) {
    mbar_ += evals(i);
    if (is_func(i)) mbar_func_ += evals(i);
  }
  if (budget_ && *budget_ < 1) throw std::invalid_argument(name_ + ": budget must be >= 1");
}

bool AlgorithmSpec::is_func(int i) const {
  return std::binary_search(func_.begin(), func_.end(), i);
}

int AlgorithmSpec::func_rank(int i) const {
  auto it = std::lower_bound(func_.begin(), func_.end(), i);
  if (it == func_.end() || *it != i)
    throw std::invalid_argument("component " + std::to_string(i) + " is not a function component");
  return static_cast<int>(it - func_.begin()) + 1;
}

int AlgorithmSpec::eval_offset(int i) const {
  if (i < 1 || i > m()) throw std::out_of_range("component index " + std::to_string(i));
  int off = 0;
  for (int r = 1; r < i; ++r) off += evals(r);
  return off;
}

int AlgorithmSpec::func_eval_offset(int i) const {
  const int rank = func_rank(i);
  int off = 0;
  for (int r = 0; r + 1 < rank; ++r) off += evals(func_[r]);
  return off;
}

void AlgorithmSpec::check_shapes(const MatrixXd& M, int rows, int cols, const char* what,
                                 int k) const {
  if (M.rows() != rows || M.cols() != cols) {
    std::ostringstream os;
    os << name_ << ": matrix " << what << " at k=" << k << " has shape " << M.rows() << "x"
       << M.cols() << ", expected " << rows << "x" << cols;
    throw std::runtime_error(os.str());
  }
}

SystemMatrices AlgorithmSpec::get_ABCD(int k) const {
  if (k < 0) throw std::out_of_range(name_ + ": negative iteration index");
  if (budget_ && k >= *budget_)
    throw std::out_of_range(name_ + ": iteration " + std::to_string(k) +
                            " exceeds the budget K=" + std::to_string(*budget_));
  SystemMatrices s = provider_(k);
  check_shapes(s.A, n_, n_, "A", k);
  check_shapes(s.B, n_, mbar_, "B", k);
  check_shapes(s.C, mbar_, n_, "C", k);
  check_shapes(s.D, mbar_, mbar_, "D", k);
  return s;
}

OutputMatrices AlgorithmSpec::get_CD(int k) const {
  if (k < 0) throw std::out_of_range(name_ + ": negative iteration index");
  if (budget_ && k > *budget_)
    throw std::out_of_range(name_ + ": output map at iteration " + std::to_string(k) +
                            " exceeds the budget K=" + std::to_string(*budget_));
  OutputMatrices o;
  if (output_) {
    o = output_(k);
  } else {
    SystemMatrices s = provider_(k);
    o = {s.C, s.D};
  }
  check_shapes(o.C, mbar_, n_, "C", k);
  check_shapes(o.D, mbar_, mbar_, "D", k);
  return o;
}

AlgorithmSpec AlgorithmSpec::with_partition(std::vector<int> func_indices) const {
  return AlgorithmSpec(name_, n_, evals_, std::move(func_indices), provider_, stationary_, budget_,
                       output_);
}

namespace {

void require_positive(const std::string& who, const char* name, double v) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::invalid_argument(who + ": " + name + " must be strictly positive");
}

void require_finite(const std::string& who, const char* name, double v) {
  if (!std::isfinite(v)) throw std::invalid_argument(who + ": " + name + " must be finite");
}

AlgorithmSpec constant(std::string name, int n, std::vector<int> evals, std::vector<int> func,
                       SystemMatrices s) {
  return AlgorithmSpec(std::move(name), n, std::move(evals), std::move(func),
                       [s](int) { return s; }, true);
}

// State (x^k, x^{k-1}) for methods with a two-term momentum.
SystemMatrices momentum_matrices(double gamma, double delta, double y_weight) {
  SystemMatrices s;
  s.A.resize(2, 2);
  s.A << 1 + delta, -delta, 1, 0;
  s.B.resize(2, 1);
  s.B << -gamma, 0;
  s.C.resize(1, 2);
  s.C << 1 + y_weight, -y_weight;
  s.D = MatrixXd::Zero(1, 1);
  return s;
}

}  // namespace

AlgorithmSpec gradient_method(double gamma) {
  require_positive("gradient", "gamma", gamma);
  SystemMatrices s;
  s.A = MatrixXd::Constant(1, 1, 1.0);
  s.B = MatrixXd::Constant(1, 1, -gamma);
  s.C = MatrixXd::Constant(1, 1, 1.0);
  s.D = MatrixXd::Zero(1, 1);
  return constant("gradient", 1, {1}, {1}, s);
}

AlgorithmSpec heavy_ball(double gamma, double delta) {
  require_positive("heavy_ball", "gamma", gamma);
  require_finite("heavy_ball", "delta", delta);
  return constant("heavy_ball", 2, {1}, {1}, momentum_matrices(gamma, delta, 0.0));
}

AlgorithmSpec nesterov_momentum(double gamma, double delta) {
  require_positive("nesterov_momentum", "gamma", gamma);
  require_finite("nesterov_momentum", "delta", delta);
  return constant("nesterov_momentum", 2, {1}, {1}, momentum_matrices(gamma, delta, delta));
}

std::vector<double> fgm_lambda_sequence(int count) {
  std::vector<double> lam;
  if (count <= 0) return lam;
  lam.push_back(1.0);
  while (static_cast<int>(lam.size()) < count) {
    const double l = lam.back();
    lam.push_back((1.0 + std::sqrt(1.0 + 4.0 * l * l)) / 2.0);
  }
  return lam;
}

AlgorithmSpec nesterov_fgm(double gamma) {
  require_positive("nesterov_fgm", "gamma", gamma);
  auto provider = [gamma](int k) {
    const auto lam = fgm_lambda_sequence(k + 2);
    const double delta = (lam[k] - 1.0) / lam[k + 1];
    SystemMatrices s;
    s.A.resize(2, 2);
    s.A << 1 + delta, -delta, 1, 0;
    s.B = MatrixXd::Zero(2, 2);
    s.B(0, 0) = -gamma;
    s.C.resize(2, 2);
    s.C << 1 + delta, -delta, 1, 0;
    s.D = MatrixXd::Zero(2, 2);
    return s;
  };
  return AlgorithmSpec("nesterov_fgm", 2, {2}, {1}, provider, false);
}

std::vector<double> ogm_theta_sequence(int K) {
  if (K < 1) throw std::invalid_argument("ogm: budget K must be >= 1");
  std::vector<double> theta(K + 1);
  theta[0] = 1.0;
  for (int k = 1; k <= K; ++k) {
    const double t = theta[k - 1];
    const double factor = (k == K) ? 8.0 : 4.0;
    theta[k] = (1.0 + std::sqrt(1.0 + factor * t * t)) / 2.0;
  }
  return theta;
}

AlgorithmSpec optimized_gradient_method(double L, int K) {
  require_positive("ogm", "L", L);
  const std::vector<double> theta = ogm_theta_sequence(K);
  // State (x^k, y^k); the gradient is evaluated at x^k.
  auto provider = [L, theta](int k) {
    const double a = (theta[k] - 1.0) / theta[k + 1];
    const double b = theta[k] / theta[k + 1];
    SystemMatrices s;
    s.A.resize(2, 2);
    s.A << 1 + a, -a, 1, 0;
    s.B.resize(2, 1);
    s.B << -(1 + a + b) / L, -1.0 / L;
    s.C.resize(1, 2);
    s.C << 1, 0;
    s.D = MatrixXd::Zero(1, 1);
    return s;
  };
  auto output = [](int) {
    OutputMatrices o;
    o.C.resize(1, 2);
    o.C << 1, 0;
    o.D = MatrixXd::Zero(1, 1);
    return o;
  };
  return AlgorithmSpec("ogm", 2, {1}, {1}, provider, false, K, output);
}

AlgorithmSpec douglas_rachford(double gamma, double lambda) {
  require_positive("douglas_rachford", "gamma", gamma);
  require_finite("douglas_rachford", "lambda", lambda);
  SystemMatrices s;
  s.A = MatrixXd::Constant(1, 1, 1.0);
  s.B.resize(1, 2);
  s.B << -lambda * gamma, -lambda * gamma;
  s.C.resize(2, 1);
  s.C << 1, 1;
  s.D.resize(2, 2);
  s.D << -gamma, 0, -2 * gamma, -gamma;
  return constant("douglas_rachford", 1, {1, 1}, {}, s);
}

AlgorithmSpec chambolle_pock(double tau, double sigma, double theta) {
  require_positive("chambolle_pock", "tau", tau);
  require_positive("chambolle_pock", "sigma", sigma);
  require_finite("chambolle_pock", "theta", theta);
  SystemMatrices s;
  s.A.resize(2, 2);
  s.A << 1, -tau, 0, 0;
  s.B.resize(2, 2);
  s.B << -tau, 0, 0, 1;
  s.C.resize(2, 2);
  s.C << 1, -tau, 1, 1.0 / sigma - tau * (1 + theta);
  s.D.resize(2, 2);
  s.D << -tau, 0, -tau * (1 + theta), -1.0 / sigma;
  return constant("chambolle_pock", 2, {1, 1}, {1, 2}, s);
}

AlgorithmSpec make_algorithm(const std::string& name, const std::map<std::string, double>& params,
                             std::optional<std::vector<int>> func_indices) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end())
      throw std::invalid_argument(name + ": missing parameter '" + std::string(key) + "'");
    return it->second;
  };
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (const char* key : keys) ok = ok || k == key;
      if (!ok) throw std::invalid_argument(name + ": unexpected parameter '" + k + "'");
    }
  };
  std::optional<AlgorithmSpec> alg;
  if (name == "gradient") {
    only({"gamma"});
    alg = gradient_method(get("gamma"));
  } else if (name == "heavy_ball") {
    only({"gamma", "delta"});
    alg = heavy_ball(get("gamma"), get("delta"));
  } else if (name == "nesterov_momentum") {
    only({"gamma", "delta"});
    alg = nesterov_momentum(get("gamma"), get("delta"));
  } else if (name == "nesterov_fgm") {
    only({"gamma"});
    alg = nesterov_fgm(get("gamma"));
  } else if (name == "ogm") {
    only({"L", "K"});
    const double K = get("K");
    if (K != std::floor(K) || K < 1) throw std::invalid_argument("ogm: K must be a positive integer");
    alg = optimized_gradient_method(get("L"), static_cast<int>(K));
  } else if (name == "douglas_rachford") {
    only({"gamma", "lambda"});
    alg = douglas_rachford(get("gamma"), get("lambda"));
  } else if (name == "chambolle_pock") {
    only({"tau", "sigma", "theta"});
    alg = chambolle_pock(get("tau"), get("sigma"), get("theta"));
  } else {
    throw std::invalid_argument("unknown algorithm '" + name + "'");
  }
  if (func_indices) return alg->with_partition(*func_indices);
  return *alg;
}

}  // namespace lyapcert
