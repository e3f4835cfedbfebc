#include "lyapcert/problem.hpp"

#include <algorithm>
#include <stdexcept>

namespace lyapcert {

Component::Component(std::vector<ComponentClass> classes) : classes_(std::move(classes)) {
  if (classes_.empty()) throw std::invalid_argument("component has no classes");
  for (const auto& c : classes_)
    if (c.kind() != classes_.front().kind())
      throw std::invalid_argument("component mixes function and operator classes: " + describe());
}

bool Component::has(ClassTag tag) const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [tag](const ComponentClass& c) { return c.tag() == tag; });
}

std::string Component::describe() const {
  std::string s;
  for (const auto& c : classes_) {
    if (!s.empty()) s += " & ";
    s += c.describe();
  }
  return s;
}

bool InclusionProblem::is_func(int i) const {
  return std::find(func_indices.begin(), func_indices.end(), i) != func_indices.end();
}

InclusionProblem make_problem(std::vector<Component> components) {
  if (components.empty()) throw std::invalid_argument("problem has no components");
  InclusionProblem p;
  p.components = std::move(components);
  for (int i = 1; i <= p.m(); ++i) {
    if (p.component(i).kind() == ComponentKind::Function)
      p.func_indices.push_back(i);
    else
      p.op_indices.push_back(i);
  }
  for (int i = 1; i <= p.m(); ++i) {
    if (p.component(i).has(ClassTag::GradientDominated) && (p.m() != 1 || p.m_op() != 0))
      throw std::invalid_argument("component " + std::to_string(i) +
                                  ": GradientDominated requires a single function component");
  }
  return p;
}

}  // namespace lyapcert
