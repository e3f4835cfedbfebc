// Shared test helpers: data-driven checks of emitted conditions and
// certificates against concrete instances.
#pragma once

#include "lyapcert/interpolation.hpp"
#include "lyapcert/lyap_independent.hpp"
#include "lyapcert/oracle.hpp"
#include "lyapcert/problem.hpp"
#include "lyapcert/structure.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace lyapcert;
using Eigen::MatrixXd;
using Eigen::VectorXd;

inline VectorXd gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  VectorXd v(d);
  for (int r = 0; r < d; ++r) v(r) = n01(rng);
  return v;
}

inline double uniform(double lo, double hi, std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Worst violation over all conditions of `comp` on points sampled around the
// solution of one component. Inequalities count their positive part, equalities
// their magnitude, both divided by max(1, sum of absolute term sizes).
inline double interpolation_violation(const Component& comp, const ConcreteComponent& cc,
                                      const VectorXd& y_star, const VectorXd& u_star, double F_star,
                                      int kmax, int evals, double spread, std::mt19937_64& rng) {
  const auto conds = enumerate_conditions(comp, 0, kmax, evals);
  const int d = static_cast<int>(y_star.size());
  // data per label, index (k, j) -> slot; the solution is the last slot
  std::vector<VectorXd> ys, us;
  std::vector<double> Fs;
  for (int k = 0; k <= kmax; ++k)
    for (int j = 1; j <= evals; ++j) {
      VectorXd y = y_star + spread * gaussian(d, rng);
      ys.push_back(y);
      us.push_back(cc.apply(y));
      Fs.push_back(cc.kind() == ComponentKind::Function ? cc.value(y) : 0.0);
    }
  ys.push_back(y_star);
  us.push_back(u_star);
  Fs.push_back(F_star);
  auto slot = [&](const PointLabel& p) {
    return p.star ? static_cast<int>(ys.size()) - 1 : p.k * evals + (p.j - 1);
  };

  double worst = 0.0;
  for (const auto& c : conds) {
    std::vector<VectorXd> cy, cu;
    VectorXd F(c.points.size());
    for (std::size_t r = 0; r < c.points.size(); ++r) {
      const int s = slot(c.points[r]);
      cy.push_back(ys[s]);
      cu.push_back(us[s]);
      F(r) = Fs[s];
    }
    const double v = evaluate_condition(c.a, c.M, cy, cu, F);
    double size = 0.0;
    std::vector<const VectorXd*> z;
    for (auto& y : cy) z.push_back(&y);
    for (auto& u : cu) z.push_back(&u);
    for (int r = 0; r < c.M.rows(); ++r)
      for (int s = 0; s < c.M.cols(); ++s) size += std::abs(c.M(r, s) * z[r]->dot(*z[s]));
    if (c.a.size() > 0) size += c.a.cwiseAbs().dot(F.cwiseAbs());
    const double viol = c.kind == ConditionKind::Equality ? std::abs(v) : std::max(0.0, v);
    worst = std::max(worst, viol / std::max(1.0, size));
  }
  return worst;
}

// A class family: a seeded random member description plus which sampler fits it.
struct ClassFamily {
  std::string name;
  std::function<Component(std::mt19937_64&)> make;
  bool sine = false;
};

inline std::vector<ClassFamily> class_families() {
  auto u = [](double lo, double hi, std::mt19937_64& g) { return uniform(lo, hi, g); };
  using CC = ComponentClass;
  return {
      {"Convex", [](std::mt19937_64&) { return Component(CC::convex()); }},
      {"StronglyConvex", [u](std::mt19937_64& g) { return Component(CC::strongly_convex(u(0.1, 2, g))); }},
      {"WeaklyConvex", [u](std::mt19937_64& g) { return Component(CC::weakly_convex(u(0.1, 2, g))); }},
      {"Smooth", [u](std::mt19937_64& g) { return Component(CC::smooth(u(0.5, 4, g))); }},
      {"SmoothConvex", [u](std::mt19937_64& g) { return Component(CC::smooth_convex(u(0.5, 4, g))); }},
      {"SmoothStronglyConvex",
       [u](std::mt19937_64& g) {
         const double mu = u(0.1, 1, g);
         return Component(CC::smooth_strongly_convex(mu, mu + u(0.2, 3, g)));
       }},
      {"SmoothWeaklyConvex",
       [u](std::mt19937_64& g) { return Component(CC::smooth_weakly_convex(u(0.1, 1, g), u(0.5, 4, g))); }},
      {"GradientDominated",
       [u](std::mt19937_64& g) { return Component(CC::gradient_dominated(u(0.05, 0.5, g))); }, true},
      {"GradientDominated&Smooth",
       [u](std::mt19937_64& g) {
         const double mu_gd = u(0.05, 0.3, g);
         return Component(std::vector<CC>{CC::gradient_dominated(mu_gd), CC::smooth(8.0 * mu_gd / 0.17 + u(0.1, 2, g))});
       },
       true},
      {"MaximallyMonotone", [](std::mt19937_64&) { return Component(CC::maximally_monotone()); }},
      {"StronglyMonotone", [u](std::mt19937_64& g) { return Component(CC::strongly_monotone(u(0.1, 2, g))); }},
      {"LipschitzOperator", [u](std::mt19937_64& g) { return Component(CC::lipschitz_operator(u(0.5, 4, g))); }},
      {"Cocoercive", [u](std::mt19937_64& g) { return Component(CC::cocoercive(u(0.1, 2, g))); }},
      {"StronglyMonotone&LipschitzOperator",
       [u](std::mt19937_64& g) {
         const double mu = u(0.1, 1, g);
         return Component(std::vector<CC>{CC::strongly_monotone(mu), CC::lipschitz_operator(mu + u(0.2, 3, g))});
       }},
  };
}

// One draw of a family: class, concrete member, and the worst violation on
// three iterations with two evaluations each.
inline double family_draw_violation(const ClassFamily& fam, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Component comp = fam.make(rng);
  const InclusionProblem prob = make_problem({comp});
  const int d = 3;
  const ConcreteInstance inst = fam.sine ? sample_sine_instance(prob, d, seed) : sample_instance(prob, d, seed);
  const ConcreteComponent& cc = inst.components[0];
  const double F_star = comp.kind() == ComponentKind::Function ? inst.F_star(0) : 0.0;
  return interpolation_violation(comp, cc, inst.y_star, inst.u_star[0], F_star, 2, 2, fam.sine ? 2.0 : 1.5, rng);
}

// Worst relative violation of the conditions a certificate asserts, evaluated
// on iterations of a concrete run of a stationary algorithm.
inline double certificate_violation(const AlgorithmSpec& alg, const IndepParams& prm,
                                    const IndepCertificate& cert, const Trajectory& tr, int K) {
  const int h = prm.h, a = prm.alpha;
  const bool values = alg.m_func() > 0;
  auto form = [&](const MatrixXd& W, const VectorXd& w, const Horizon& hz) {
    return evaluate_quadform(W, values ? w : VectorXd(), tr, alg, hz);
  };
  double worst = 0.0;
  auto record = [&](double lhs, double scale) { worst = std::max(worst, std::max(0.0, lhs) / std::max(1.0, scale)); };

  const ShiftMaps c1 = build_thetas(alg, ShiftFamily::C1, h, a);
  for (int k = 0; k + h + a + 1 <= K; ++k) {
    const Horizon hz{k, k + h + a + 1};
    const double after = form(c1.Theta_after.transpose() * cert.Q * c1.Theta_after,
                              values ? VectorXd(c1.theta_after.transpose() * cert.q) : VectorXd(), hz);
    const double before = form(c1.Theta_before.transpose() * cert.Q * c1.Theta_before,
                               values ? VectorXd(c1.theta_before.transpose() * cert.q) : VectorXd(), hz);
    const double r = form(cert.S, cert.s, hz);
    record(after - prm.rho * before + r, std::abs(after) + prm.rho * std::abs(before) + std::abs(r));
    if (!prm.remove_C3) {
      const double t = form(prm.T, prm.t, hz);
      record(t - r, std::abs(t) + std::abs(r));
    }
  }
  if (!prm.remove_C2)
    for (int k = 0; k + h <= K; ++k) {
      const Horizon hz{k, k + h};
      const double p = form(prm.P, prm.p, hz), q = form(cert.Q, cert.q, hz);
      record(p - q, std::abs(p) + std::abs(q));
    }
  if (!prm.remove_C4) {
    const ShiftMaps c4 = build_thetas(alg, ShiftFamily::C4, h, a);
    for (int k = 0; k + h + a + 2 <= K; ++k) {
      const Horizon hz{k, k + h + a + 2};
      const double after = form(c4.Theta_after.transpose() * cert.S * c4.Theta_after,
                                values ? VectorXd(c4.theta_after.transpose() * cert.s) : VectorXd(), hz);
      const double before = form(c4.Theta_before.transpose() * cert.S * c4.Theta_before,
                                 values ? VectorXd(c4.theta_before.transpose() * cert.s) : VectorXd(), hz);
      record(after - before, std::abs(after) + std::abs(before));
    }
  }
  return worst;
}

inline double max_abs(const MatrixXd& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

inline double rel_diff(const MatrixXd& got, const MatrixXd& want) {
  if (got.rows() != want.rows() || got.cols() != want.cols()) return INFINITY;
  return max_abs(got - want) / std::max(1.0, max_abs(want));
}

// A built-in method with random parameters and a problem it runs on.
struct Builtin {
  std::string name;
  std::function<AlgorithmSpec(std::mt19937_64&)> make;
  InclusionProblem problem;
};

inline std::vector<Builtin> builtins(int budget = 8) {
  using CC = ComponentClass;
  const auto smooth = make_problem({Component(CC::smooth_strongly_convex(0.5, 2.0))});
  const auto ops = make_problem({Component(CC::maximally_monotone()),
                                 Component(std::vector<CC>{CC::strongly_monotone(1.0), CC::lipschitz_operator(2.0)})});
  const auto two = make_problem({Component(CC::convex()), Component(CC::convex())});
  return {
      {"gradient", [](std::mt19937_64& g) { return gradient_method(uniform(0.1, 1.5, g)); }, smooth},
      {"heavy_ball", [](std::mt19937_64& g) { return heavy_ball(uniform(0.1, 1.5, g), uniform(-0.5, 0.9, g)); }, smooth},
      {"nesterov_momentum",
       [](std::mt19937_64& g) { return nesterov_momentum(uniform(0.1, 1.5, g), uniform(-0.5, 0.9, g)); }, smooth},
      {"nesterov_fgm", [](std::mt19937_64& g) { return nesterov_fgm(uniform(0.1, 1.0, g)); }, smooth},
      {"ogm", [budget](std::mt19937_64& g) { return optimized_gradient_method(uniform(1.0, 4.0, g), budget); }, smooth},
      {"douglas_rachford",
       [](std::mt19937_64& g) { return douglas_rachford(uniform(0.1, 3.0, g), uniform(0.1, 1.9, g)); }, ops},
      {"chambolle_pock",
       [](std::mt19937_64& g) {
         return chambolle_pock(uniform(0.2, 2.0, g), uniform(0.2, 2.0, g), uniform(0.0, 1.0, g));
       },
       two},
  };
}

// max gap of X_{k+1} = A_k X_k + B_k U_k and Y_k = C_k X_k + D_k U_k on a horizon.
inline double recursion_gap(const AlgorithmSpec& alg, const Horizon& hz) {
  double worst = 0.0;
  for (int k = hz.kmin; k <= hz.kmax; ++k) {
    const MatrixXd X = build_X(alg, hz, k), U = build_U(alg, hz, k);
    const OutputMatrices o = alg.get_CD(k);
    worst = std::max(worst, rel_diff(build_Y(alg, hz, k), o.C * X + o.D * U));
    if (!alg.budget() || k < *alg.budget()) {
      const SystemMatrices s = alg.get_ABCD(k);
      worst = std::max(worst, rel_diff(build_X(alg, hz, k + 1), s.A * X + s.B * U));
    }
  }
  return worst;
}

// Every selector applied to the stacks of a horizon against the named
// pieces of the trajectory.
inline double selector_gap(const Trajectory& tr, const AlgorithmSpec& alg, const Horizon& hz) {
  const MatrixXd z = zeta_stack(tr, alg, hz);
  const VectorXd chi = chi_stack(tr, alg, hz);
  const int m = alg.m();
  double worst = 0.0;
  auto upd = [&](double v) { worst = std::max(worst, v); };
  for (int k = hz.kmin; k <= hz.kmax + 1; ++k)
    if (k < static_cast<int>(tr.x.size()) && (!alg.budget() || k <= *alg.budget()))
      upd(rel_diff(build_X(alg, hz, k) * z, tr.x[k]));
  for (int k = hz.kmin; k <= hz.kmax; ++k) {
    upd(rel_diff(build_Y(alg, hz, k) * z, tr.y[k]));
    upd(rel_diff(build_U(alg, hz, k) * z, tr.u[k]));
    for (int i = 1; i <= m; ++i)
      for (int j = 1; j <= alg.evals(i); ++j) {
        upd(rel_diff(build_P(alg, i, j) * tr.y[k], tr.y[k].row(alg.eval_offset(i) + j - 1)));
        if (alg.is_func(i)) {
          const double got = build_F(alg, hz, i, j, k).dot(chi);
          upd(rel_diff(MatrixXd::Constant(1, 1, got),
                       MatrixXd::Constant(1, 1, tr.F[k](alg.func_eval_offset(i) + j - 1))));
        }
      }
  }
  const MatrixXd ystar = MatrixXd::Ones(m, 1) * tr.y_star.transpose();
  upd(rel_diff(build_Y_star(alg, hz) * z, ystar));
  upd(rel_diff(build_U_star(alg, hz) * z, tr.u_star));
  for (int i = 1; i <= m; ++i) {
    upd(rel_diff(build_P_star(alg, i) * build_U_star(alg, hz) * z, tr.u_star.row(i - 1)));
    if (alg.is_func(i)) {
      const double got = build_F_star(alg, hz, i).dot(chi);
      upd(rel_diff(MatrixXd::Constant(1, 1, got), MatrixXd::Constant(1, 1, tr.F_star(alg.func_rank(i) - 1))));
    }
  }
  return worst;
}

// Theta maps against the stacks of the windows they name.
inline double theta_gap(const Trajectory& tr, const AlgorithmSpec& alg, ShiftFamily fam, int h, int a, int k) {
  Horizon lng, before, after;
  switch (fam) {
    case ShiftFamily::C1: lng = {0, h + a + 1}; before = {0, h}; after = {a + 1, h + a + 1}; break;
    case ShiftFamily::C4: lng = {0, h + a + 2}; before = {0, h + a + 1}; after = {1, h + a + 2}; break;
    case ShiftFamily::Dependent: lng = {k, k + 1}; before = {k, k}; after = {k + 1, k + 1}; break;
  }
  const ShiftMaps sm = build_thetas(alg, fam, h, a, k);
  const MatrixXd z = zeta_stack(tr, alg, lng);
  double worst = std::max(rel_diff(sm.Theta_before * z, zeta_stack(tr, alg, before)),
                          rel_diff(sm.Theta_after * z, zeta_stack(tr, alg, after)));
  if (alg.m_func() > 0) {
    const VectorXd chi = chi_stack(tr, alg, lng);
    worst = std::max({worst, rel_diff(sm.theta_before * chi, chi_stack(tr, alg, before)),
                      rel_diff(sm.theta_after * chi, chi_stack(tr, alg, after))});
  }
  return worst;
}

// A seeded run of a built-in; `K` iterations.
inline Trajectory builtin_trajectory(const Builtin& b, const AlgorithmSpec& alg, std::uint64_t seed, int K) {
  const ConcreteInstance inst = sample_instance(b.problem, 3, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  MatrixXd x0(alg.n(), 3);
  for (int r = 0; r < alg.n(); ++r) x0.row(r) = gaussian(3, rng).transpose();
  return run_trajectory(inst, alg, x0, K);
}

}  // namespace testsupport
