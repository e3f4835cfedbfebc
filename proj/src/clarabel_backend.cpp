#include "lyapcert/sdp.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

extern "C" {
struct LcSettings {
  double tol;
  std::uint32_t max_iter;
  double time_limit;
  std::int32_t verbose;
};
struct LcInfo {
  std::int32_t status;
  std::uint32_t iterations;
  double primal_objective;
  double dual_objective;
  double primal_residual;
  double dual_residual;
  double solve_seconds;
};
std::int32_t lc_clarabel_solve(std::size_t n, std::size_t m, const std::size_t* colptr,
                               const std::size_t* rowval, const double* nzval, const double* b,
                               const double* c, std::size_t nzero, std::size_t nnonneg,
                               std::size_t npsd, const std::size_t* psd_sizes,
                               const LcSettings* settings, double* x_out, LcInfo* info);
}

namespace lyapcert {

namespace {

class ClarabelBackend final : public ConicBackend {
public:
  std::string name() const override { return "clarabel"; }

  ConicResult solve(const ConicProblem& cp, const SolverSettings& settings) const override {
    const auto m = static_cast<std::size_t>(cp.b.size());
    const auto n = static_cast<std::size_t>(cp.num_vars);
    Eigen::SparseMatrix<double, Eigen::ColMajor, long> A(static_cast<long>(m), static_cast<long>(n));
    A.setFromTriplets(cp.A.begin(), cp.A.end());
    A.makeCompressed();

    std::vector<std::size_t> colptr(A.outerIndexPtr(), A.outerIndexPtr() + n + 1);
    std::vector<std::size_t> rowval(A.innerIndexPtr(), A.innerIndexPtr() + A.nonZeros());
    std::vector<double> nzval(A.valuePtr(), A.valuePtr() + A.nonZeros());
    std::vector<std::size_t> psd(cp.psd.begin(), cp.psd.end());

    // Interior-point tolerances a decade below the re-check allowance of 10 * tol.
    LcSettings st{0.1 * settings.tol, static_cast<std::uint32_t>(settings.max_iters),
                  settings.time_limit_secs, settings.verbose ? 1 : 0};
    std::vector<double> x(n, 0.0);
    LcInfo info{};
    ConicResult res;
    const int rc = lc_clarabel_solve(n, m, colptr.data(), rowval.data(), nzval.data(), cp.b.data(),
                                     cp.c.data(), static_cast<std::size_t>(cp.zero),
                                     static_cast<std::size_t>(cp.nonneg), psd.size(), psd.data(),
                                     &st, x.data(), &info);
    if (rc != 0) {
      res.detail = "rejected problem data";
      return res;
    }
    res.iterations = static_cast<int>(info.iterations);
    res.primal_objective = info.primal_objective;
    res.dual_objective = info.dual_objective;
    res.primal_residual = info.primal_residual;
    res.dual_residual = info.dual_residual;
    res.solve_seconds = info.solve_seconds;
    using S = ConicResult::Status;
    switch (info.status) {
      case 0: res.status = S::Solved; res.detail = "solved"; break;
      case 1: res.status = S::Inaccurate; res.detail = "almost solved"; break;
      case 2: res.status = S::Infeasible; res.detail = "primal infeasible"; break;
      case 3: res.status = S::Infeasible; res.detail = "almost primal infeasible"; break;
      case 4: res.status = S::Unbounded; res.detail = "dual infeasible"; break;
      case 5: res.status = S::Unbounded; res.detail = "almost dual infeasible"; break;
      case 6: res.status = S::Inaccurate; res.detail = "iteration limit"; break;
      case 7: res.status = S::Inaccurate; res.detail = "time limit"; break;
      case 8: res.status = S::Inaccurate; res.detail = "numerical error"; break;
      case 9: res.status = S::Inaccurate; res.detail = "insufficient progress"; break;
      default: res.status = S::Failed; res.detail = "unknown status"; break;
    }
    if (res.status == S::Solved || res.status == S::Inaccurate)
      res.x = Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n));
    return res;
  }
};

}  // namespace

std::unique_ptr<ConicBackend> make_default_backend() { return std::make_unique<ClarabelBackend>(); }

}  // namespace lyapcert
