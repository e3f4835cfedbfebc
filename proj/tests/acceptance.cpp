// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include "lyapcert/lyap_dependent.hpp"
#include "lyapcert/lyap_independent.hpp"
#include "lyapcert/sdp.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>

using namespace lyapcert;
using namespace testsupport;

namespace {

const SolverSettings kSettings{};  // tol 1e-9
const double kRecheckAllowance = 10.0 * kSettings.tol;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s [%s]\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Feasible verdicts gathered for criterion 10, each with the model that produced it.
struct Recorded {
  std::string label;
  SDPModel model;
  Eigen::VectorXd values;
};
std::vector<Recorded> feasible_log;

void log_indep(const std::string& label, const InclusionProblem& prob, const AlgorithmSpec& alg,
               const IndepParams& prm, const IndepResult& r) {
  if (r.verdict.feasible()) feasible_log.push_back({label, build_independent_model(prob, alg, prm).model, r.verdict.values});
}

void log_dep(const std::string& label, const InclusionProblem& prob, const AlgorithmSpec& alg, const DepParams& prm,
             const DepResult& r) {
  if (r.verdict.feasible()) feasible_log.push_back({label, build_dependent_model(prob, alg, prm).model, r.verdict.values});
}

const InclusionProblem& smooth_convex() {
  static const InclusionProblem p = make_problem({Component(ComponentClass::smooth_convex(1.0))});
  return p;
}

// Recursions written out here rather than taken from the library.
double fgm_lambda(int k) {
  double l = 1.0;
  for (int r = 0; r < k; ++r) l = (1.0 + std::sqrt(1.0 + 4.0 * l * l)) / 2.0;
  return l;
}

double ogm_theta(int K) {
  double t = 1.0;
  for (int r = 1; r <= K; ++r) t = (1.0 + std::sqrt(1.0 + (r == K ? 8.0 : 4.0) * t * t)) / 2.0;
  return t;
}

void criterion_fast_method(int id, const std::string& name, const AlgorithmSpec& alg, int j, double expect,
                           double bound) {
  const auto t0 = std::chrono::steady_clock::now();
  DepParams p;
  p.K = 10;
  p.first = dep_params_distance(alg, 0, 1, j);
  p.last = dep_params_funcval(alg, 10, j);
  const DepResult r = verify_dependent(smooth_convex(), alg, p, kSettings);
  const double dt = seconds_since(t0);
  log_dep(name, smooth_convex(), alg, p, r);
  // OGM attains its bound exactly, so the comparison carries the solver slack
  const bool ok = r.verdict.feasible() && r.c && std::abs(*r.c - expect) <= 5e-4 &&
                  *r.c <= bound + kRecheckAllowance && dt <= 60.0;
  std::ostringstream os;
  os << "status=" << status_name(r.verdict.status) << " c=" << (r.c ? fmt("%.9f", *r.c) : "none")
     << " expected " << expect << "+-5e-4, bound " << fmt("%.9f", bound) << "+1e-8" << ", " << fmt("%.2f", dt) << "s";
  report(id, ok, name + " constant, K=10", os.str());
}

void criterion_sublinear(int id, const std::string& name, const AlgorithmSpec& alg) {
  IndepParams p = params_sublinear_funcval(alg);
  p.rho = 1.0;
  p.remove_C4 = false;
  const IndepResult r = verify_independent(smooth_convex(), alg, p, kSettings);
  log_indep(name, smooth_convex(), alg, p, r);
  report(id, r.verdict.feasible(), name + " o(1/k) function-value certificate",
         "status=" + status_name(r.verdict.status) + " backend=" + r.verdict.diagnostics.backend_status);
}

void criterion_cp() {
  const auto prob = make_problem({Component(ComponentClass::convex()), Component(ComponentClass::convex())});
  const auto alg = chambolle_pock(1, 1, 1);
  IndepParams a = params_sublinear_fpr(alg, 1, 1);
  a.rho = 1.0;
  const IndepResult ra = verify_independent(prob, alg, a, kSettings);
  log_indep("chambolle_pock h=1", prob, alg, a, ra);
  IndepParams b = params_sublinear_fpr(alg, 0, 0);
  b.rho = 1.0;
  const IndepResult rb = verify_independent(prob, alg, b, kSettings);
  log_indep("chambolle_pock h=0", prob, alg, b, rb);
  report(5, ra.verdict.feasible() && rb.verdict.status != VerdictStatus::NumericalFailure,
         "Chambolle-Pock summability at (1,1,1)",
         "h=1,alpha=1: " + status_name(ra.verdict.status) + "; h=0,alpha=0: " + status_name(rb.verdict.status));
}

void criterion_dr() {
  const auto prob =
      make_problem({Component(ComponentClass::maximally_monotone()),
                    Component(std::vector<ComponentClass>{ComponentClass::strongly_monotone(1.0),
                                                          ComponentClass::lipschitz_operator(2.0)})});
  bool ok = true;
  std::ostringstream os;
  double worst_traj = 0.0;
  for (double gamma : {0.5, 1.0, 2.0}) {
    const auto alg = douglas_rachford(gamma, 2.0);
    const IndepParams base = params_linear_distance(alg);
    const BisectionResult br = bisect_rho(prob, alg, base, 0.0, 1.0, 1e-4, kSettings);
    os << "gamma=" << gamma << ": ";
    if (!br.rho || !br.at_rho || br.status != VerdictStatus::Feasible) {
      os << status_name(br.status) << "; ";
      ok = false;
      continue;
    }
    const double rho = *br.rho;
    IndepParams at = base;
    at.rho = rho;
    log_indep("dr rho", prob, alg, at, *br.at_rho);
    ok = ok && rho > 0.0 && rho < 1.0;
    os << "rho=" << fmt("%.5f", rho);

    // monotone in rho: feasible above, infeasible below
    IndepParams up = base, down = base;
    up.rho = std::min(1.0, rho + 0.05);
    down.rho = std::max(0.0, rho - 0.05);
    const IndepResult ru = verify_independent(prob, alg, up, kSettings);
    const IndepResult rd = verify_independent(prob, alg, down, kSettings);
    log_indep("dr rho+0.05", prob, alg, up, ru);
    ok = ok && ru.verdict.feasible() && rd.verdict.status == VerdictStatus::Infeasible;
    os << " (+0.05 " << status_name(ru.verdict.status) << ", -0.05 " << status_name(rd.verdict.status) << ")";

    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const ConcreteInstance inst = sample_instance(prob, 3, seed);
      std::mt19937_64 rng(seed + 7777);
      const Trajectory tr = run_trajectory(inst, alg, gaussian(3, rng).transpose(), 20);
      worst = std::max(worst, certificate_violation(alg, at, *br.at_rho->certificate, tr, 20));
    }
    worst_traj = std::max(worst_traj, worst);
    os << " traj=" << fmt("%.2e", worst) << "; ";
  }
  ok = ok && worst_traj < 1e-6;
  report(6, ok, "Douglas-Rachford rho over gamma in {0.5, 1, 2}", os.str());
}

void criterion_recursions() {
  std::mt19937_64 rng(70);
  double worst = 0.0;
  int checked = 0;
  for (const auto& b : builtins(6)) {
    for (int trial = 0; trial < 10; ++trial) {
      const AlgorithmSpec alg = b.make(rng);
      for (int kmin = 0; kmin <= 4; ++kmin)
        for (int kmax = kmin; kmax <= 4; ++kmax) {
          worst = std::max(worst, recursion_gap(alg, {kmin, kmax}));
          ++checked;
        }
    }
  }
  report(7, worst <= 1e-12, "state-space recursion identities", fmt("max gap %.2e", worst) + " over " +
                                                                    std::to_string(checked) + " horizons");
}

void criterion_selectors() {
  std::mt19937_64 rng(80);
  const auto list = builtins(8);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const Builtin& b = list[t % list.size()];
    const AlgorithmSpec alg = b.make(rng);
    const Trajectory tr = builtin_trajectory(b, alg, 800 + t, 8);
    for (int kmin = 0; kmin <= 3; ++kmin) worst = std::max(worst, selector_gap(tr, alg, {kmin, kmin + 2}));
    for (int k = 0; k <= 4; ++k) worst = std::max(worst, theta_gap(tr, alg, ShiftFamily::Dependent, 0, 0, k));
    for (int h = 0; h <= 1; ++h)
      for (int a = 0; a <= 1; ++a) {
        worst = std::max(worst, theta_gap(tr, alg, ShiftFamily::C1, h, a, 0));
        worst = std::max(worst, theta_gap(tr, alg, ShiftFamily::C4, h, a, 0));
      }
  }
  report(8, worst <= 1e-12, "selectors and shift maps on 20 trajectories", fmt("max gap %.2e", worst));
}

void criterion_interpolation() {
  std::ostringstream os;
  int violated = 0;
  double worst = 0.0;
  for (const auto& fam : class_families()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const double v = family_draw_violation(fam, 90000 + seed);
      worst = std::max(worst, v);
      if (v > 1e-9) ++violated;
    }
  }
  os << class_families().size() << " families x 200 draws, " << violated << " violated, worst "
     << fmt("%.2e", worst);
  report(9, violated == 0, "interpolation soundness", os.str());
}

void criterion_recheck() {
  int passed = 0;
  std::string bad;
  double worst = 0.0;
  for (const auto& r : feasible_log) {
    const RecheckReport rep = recheck(r.model, r.values, kRecheckAllowance);
    worst = std::max(worst, rep.worst_relative_violation);
    if (rep.passed) ++passed;
    else bad += " " + r.label;
  }
  const bool ok = !feasible_log.empty() && passed == static_cast<int>(feasible_log.size());
  report(10, ok, "independent re-check of every feasible verdict",
         std::to_string(passed) + "/" + std::to_string(feasible_log.size()) + " within 10x tol, worst relative " +
             fmt("%.2e", worst) + (bad.empty() ? "" : "; failed:" + bad));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  auto guarded = [](int id, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      report(id, false, "threw", e.what());
    }
  };
  guarded(1, [] {
    criterion_fast_method(1, "nesterov_fgm", nesterov_fgm(1.0), 2, 0.0110, 1.0 / (2.0 * std::pow(fgm_lambda(10), 2)));
  });
  guarded(2, [] {
    criterion_fast_method(2, "ogm", optimized_gradient_method(1.0, 10), 1, 0.0063,
                          1.0 / (2.0 * std::pow(ogm_theta(10), 2)));
  });
  guarded(3, [] { criterion_sublinear(3, "heavy_ball(1, 0.5)", heavy_ball(1.0, 0.5)); });
  guarded(4, [] { criterion_sublinear(4, "nesterov_momentum(1, 0.5)", nesterov_momentum(1.0, 0.5)); });
  guarded(5, criterion_cp);
  guarded(6, criterion_dr);
  guarded(7, criterion_recursions);
  guarded(8, criterion_selectors);
  guarded(9, criterion_interpolation);
  guarded(10, criterion_recheck);
  std::printf("%d criteria failed, %.1fs\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
