#include "lyapcert/interpolation.hpp"
#include "lyapcert/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lyapcert {

namespace {

struct TagInfo {
  ClassTag tag;
  const char* name;
  ComponentKind kind;
  std::vector<std::string> required;
};

const std::vector<TagInfo>& tag_table() {
  static const std::vector<TagInfo> table = {
      {ClassTag::Convex, "Convex", ComponentKind::Function, {}},
      {ClassTag::StronglyConvex, "StronglyConvex", ComponentKind::Function, {"mu"}},
      {ClassTag::WeaklyConvex, "WeaklyConvex", ComponentKind::Function, {"mu_tilde"}},
      {ClassTag::Smooth, "Smooth", ComponentKind::Function, {"L"}},
      {ClassTag::SmoothConvex, "SmoothConvex", ComponentKind::Function, {"L"}},
      {ClassTag::SmoothStronglyConvex, "SmoothStronglyConvex", ComponentKind::Function, {"mu", "L"}},
      {ClassTag::SmoothWeaklyConvex, "SmoothWeaklyConvex", ComponentKind::Function, {"mu_tilde", "L"}},
      {ClassTag::GradientDominated, "GradientDominated", ComponentKind::Function, {"mu_gd"}},
      {ClassTag::MaximallyMonotone, "MaximallyMonotone", ComponentKind::Operator, {}},
      {ClassTag::StronglyMonotone, "StronglyMonotone", ComponentKind::Operator, {"mu"}},
      {ClassTag::LipschitzOperator, "LipschitzOperator", ComponentKind::Operator, {"L"}},
      {ClassTag::Cocoercive, "Cocoercive", ComponentKind::Operator, {"beta"}},
  };
  return table;
}

const TagInfo& info(ClassTag tag) {
  for (const auto& t : tag_table())
    if (t.tag == tag) return t;
  throw std::logic_error("unknown class tag");
}

// Entries of the F_{mu,L} condition in the point order (y_a, y_b, u_a, u_b).
Eigen::MatrixXd curvature_matrix(const CurvatureBounds& cb) {
  Eigen::Matrix4d M;
  const double mu = cb.mu;
  if (cb.L) {
    const double L = *cb.L;
    M << mu * L, -mu * L, -mu, L,
        -mu * L, mu * L, mu, -L,
        -mu, mu, 1.0, -1.0,
        L, -L, -1.0, 1.0;
    M *= 1.0 / (2.0 * (L - mu));
  } else {
    M << mu, -mu, 0.0, 1.0,
        -mu, mu, 0.0, -1.0,
        0.0, 0.0, 0.0, 0.0,
        1.0, -1.0, 0.0, 0.0;
    M *= 0.5;
  }
  return M;
}

}  // namespace

std::string tag_name(ClassTag tag) { return info(tag).name; }

ClassTag parse_tag(const std::string& name) {
  for (const auto& t : tag_table())
    if (name == t.name) return t.tag;
  throw std::invalid_argument("unknown class '" + name + "'");
}

ComponentClass::ComponentClass(ClassTag tag, std::map<std::string, double> params)
    : tag_(tag), params_(std::move(params)) {
  const TagInfo& ti = info(tag);
  for (const auto& [name, value] : params_) {
    bool known = false;
    for (const auto& r : ti.required) known = known || r == name;
    if (!known)
      throw std::invalid_argument(std::string(ti.name) + ": unexpected parameter '" + name + "'");
    if (!(value > 0.0))
      throw std::invalid_argument(std::string(ti.name) + ": parameter '" + name +
                                  "' must be strictly positive");
  }
  for (const auto& r : ti.required)
    if (!params_.count(r))
      throw std::invalid_argument(std::string(ti.name) + ": missing parameter '" + r + "'");
  if (tag == ClassTag::SmoothStronglyConvex && !(params_.at("mu") < params_.at("L")))
    throw std::invalid_argument("SmoothStronglyConvex: requires mu < L");
  for (const auto& [name, value] : params_)
    if (!std::isfinite(value))
      throw std::invalid_argument(std::string(ti.name) + ": parameter '" + name + "' must be finite");
}

ComponentClass ComponentClass::convex() { return {ClassTag::Convex}; }
ComponentClass ComponentClass::strongly_convex(double mu) {
  return {ClassTag::StronglyConvex, {{"mu", mu}}};
}
ComponentClass ComponentClass::weakly_convex(double mu_tilde) {
  return {ClassTag::WeaklyConvex, {{"mu_tilde", mu_tilde}}};
}
ComponentClass ComponentClass::smooth(double L) { return {ClassTag::Smooth, {{"L", L}}}; }
ComponentClass ComponentClass::smooth_convex(double L) {
  return {ClassTag::SmoothConvex, {{"L", L}}};
}
ComponentClass ComponentClass::smooth_strongly_convex(double mu, double L) {
  return {ClassTag::SmoothStronglyConvex, {{"mu", mu}, {"L", L}}};
}
ComponentClass ComponentClass::smooth_weakly_convex(double mu_tilde, double L) {
  return {ClassTag::SmoothWeaklyConvex, {{"mu_tilde", mu_tilde}, {"L", L}}};
}
ComponentClass ComponentClass::gradient_dominated(double mu_gd) {
  return {ClassTag::GradientDominated, {{"mu_gd", mu_gd}}};
}
ComponentClass ComponentClass::maximally_monotone() { return {ClassTag::MaximallyMonotone}; }
ComponentClass ComponentClass::strongly_monotone(double mu) {
  return {ClassTag::StronglyMonotone, {{"mu", mu}}};
}
ComponentClass ComponentClass::lipschitz_operator(double L) {
  return {ClassTag::LipschitzOperator, {{"L", L}}};
}
ComponentClass ComponentClass::cocoercive(double beta) {
  return {ClassTag::Cocoercive, {{"beta", beta}}};
}

ComponentKind ComponentClass::kind() const { return info(tag_).kind; }

double ComponentClass::param(const std::string& name) const {
  auto it = params_.find(name);
  if (it == params_.end())
    throw std::invalid_argument(tag_name(tag_) + " has no parameter '" + name + "'");
  return it->second;
}

CurvatureBounds ComponentClass::curvature() const {
  switch (tag_) {
    case ClassTag::Convex: return {0.0, std::nullopt};
    case ClassTag::StronglyConvex: return {param("mu"), std::nullopt};
    case ClassTag::WeaklyConvex: return {-param("mu_tilde"), std::nullopt};
    case ClassTag::Smooth: return {-param("L"), param("L")};
    case ClassTag::SmoothConvex: return {0.0, param("L")};
    case ClassTag::SmoothStronglyConvex: return {param("mu"), param("L")};
    case ClassTag::SmoothWeaklyConvex: return {-param("mu_tilde"), param("L")};
    default:
      throw std::invalid_argument(tag_name(tag_) + " is not described by a curvature pair");
  }
}

std::string ComponentClass::describe() const {
  std::ostringstream os;
  os << tag_name(tag_);
  if (!params_.empty()) {
    os << "(";
    bool first = true;
    for (const auto& [k, v] : params_) {
      if (!first) os << ", ";
      os << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  return os.str();
}

PairCondition pairwise_condition(const ComponentClass& cls) {
  PairCondition pc;
  pc.kind = ConditionKind::Inequality;
  switch (cls.tag()) {
    case ClassTag::Convex:
    case ClassTag::StronglyConvex:
    case ClassTag::WeaklyConvex:
    case ClassTag::Smooth:
    case ClassTag::SmoothConvex:
    case ClassTag::SmoothStronglyConvex:
    case ClassTag::SmoothWeaklyConvex:
      pc.a = Eigen::Vector2d(-1.0, 1.0);
      pc.M = curvature_matrix(cls.curvature());
      pc.swap_symmetric = false;
      return pc;
    case ClassTag::MaximallyMonotone: {
      Eigen::Matrix4d M;
      M << 0, 0, -1, 1,
           0, 0, 1, -1,
           -1, 1, 0, 0,
           1, -1, 0, 0;
      pc.M = 0.5 * M;
      pc.swap_symmetric = true;
      return pc;
    }
    case ClassTag::StronglyMonotone: {
      const double mu = cls.param("mu");
      Eigen::Matrix4d M;
      M << 2 * mu, -2 * mu, -1, 1,
           -2 * mu, 2 * mu, 1, -1,
           -1, 1, 0, 0,
           1, -1, 0, 0;
      pc.M = 0.5 * M;
      pc.swap_symmetric = true;
      return pc;
    }
    case ClassTag::LipschitzOperator: {
      const double L2 = cls.param("L") * cls.param("L");
      Eigen::Matrix4d M;
      M << -L2, L2, 0, 0,
           L2, -L2, 0, 0,
           0, 0, 1, -1,
           0, 0, -1, 1;
      pc.M = M;
      pc.swap_symmetric = true;
      return pc;
    }
    case ClassTag::Cocoercive: {
      const double beta = cls.param("beta");
      Eigen::Matrix4d M;
      M << 0, 0, -1, 1,
           0, 0, 1, -1,
           -1, 1, 2 * beta, -2 * beta,
           1, -1, -2 * beta, 2 * beta;
      pc.M = 0.5 * M;
      pc.swap_symmetric = true;
      return pc;
    }
    default:
      throw std::invalid_argument("no interpolation condition registered for " +
                                  tag_name(cls.tag()) + " as a plain pair");
  }
}

std::vector<PairCondition> gradient_dominated_conditions(double mu_gd) {
  if (!(mu_gd > 0.0) || !std::isfinite(mu_gd))
    throw std::invalid_argument("GradientDominated: mu_gd must be strictly positive");
  PairCondition lower;
  lower.a = Eigen::Vector2d(-1.0, 1.0);
  lower.M = Eigen::Matrix4d::Zero();
  PairCondition upper;
  upper.a = Eigen::Vector2d(1.0, -1.0);
  upper.M = Eigen::Matrix4d::Zero();
  upper.M(2, 2) = -1.0 / (2.0 * mu_gd);
  return {lower, upper};
}

std::vector<InterpCondition> enumerate_conditions(const Component& comp, int kmin,
                                                  int kmax, int evals) {
  if (kmin > kmax) throw std::invalid_argument("enumerate_conditions: kmin > kmax");
  if (evals < 1) throw std::invalid_argument("enumerate_conditions: evals must be >= 1");

  std::vector<PointLabel> labels;
  for (int k = kmin; k <= kmax; ++k)
    for (int j = 1; j <= evals; ++j) labels.push_back(PointLabel::at(j, k));
  labels.push_back(PointLabel::solution());
  const std::size_t nl = labels.size();

  std::vector<InterpCondition> out;
  auto emit = [&](const PairCondition& pc, const PointLabel& p, const PointLabel& q) {
    InterpCondition c;
    c.kind = pc.kind;
    c.points = {p, q};
    c.a = pc.a;
    c.M = pc.M;
    out.push_back(std::move(c));
  };

  for (const auto& cls : comp.classes()) {
    if (cls.tag() == ClassTag::GradientDominated) {
      const auto pcs = gradient_dominated_conditions(cls.param("mu_gd"));
      for (std::size_t r = 0; r + 1 < nl; ++r)
        for (const auto& pc : pcs) emit(pc, labels[r], labels.back());
      continue;
    }
    const PairCondition pc = pairwise_condition(cls);
    for (std::size_t r = 0; r < nl; ++r)
      for (std::size_t s = 0; s < nl; ++s) {
        if (r == s) continue;
        if (pc.swap_symmetric && s < r) continue;
        emit(pc, labels[r], labels[s]);
      }
  }
  return out;
}

double evaluate_condition(const Eigen::VectorXd& a, const Eigen::MatrixXd& M,
                          const std::vector<Eigen::VectorXd>& ys,
                          const std::vector<Eigen::VectorXd>& us,
                          const Eigen::VectorXd& F) {
  const std::size_t p = ys.size();
  if (us.size() != p || static_cast<std::size_t>(M.rows()) != 2 * p)
    throw std::invalid_argument("evaluate_condition: size mismatch");
  std::vector<const Eigen::VectorXd*> z;
  for (const auto& y : ys) z.push_back(&y);
  for (const auto& u : us) z.push_back(&u);
  double value = 0.0;
  for (std::size_t r = 0; r < 2 * p; ++r)
    for (std::size_t s = 0; s < 2 * p; ++s)
      if (M(r, s) != 0.0) value += M(r, s) * z[r]->dot(*z[s]);
  if (a.size() > 0) {
    if (F.size() != a.size()) throw std::invalid_argument("evaluate_condition: F size mismatch");
    value += a.dot(F);
  }
  return value;
}

}  // namespace lyapcert
