#pragma once

#include "lyapcert/interpolation.hpp"

#include <vector>

namespace lyapcert {

// Intersection of classes of one kind. A single class is the common case.
class Component {
public:
  Component(std::vector<ComponentClass> classes);
  Component(ComponentClass cls) : Component(std::vector<ComponentClass>{cls}) {}

  const std::vector<ComponentClass>& classes() const { return classes_; }
  ComponentKind kind() const { return classes_.front().kind(); }
  bool has(ClassTag tag) const;
  std::string describe() const;

private:
  std::vector<ComponentClass> classes_;
};

// Component order matters: component i (1-based) owns u_i, its evaluation
// count, and its rank among the function components.
struct InclusionProblem {
  std::vector<Component> components;
  std::vector<int> func_indices;  // 1-based, increasing
  std::vector<int> op_indices;    // 1-based, increasing

  int m() const { return static_cast<int>(components.size()); }
  int m_func() const { return static_cast<int>(func_indices.size()); }
  int m_op() const { return static_cast<int>(op_indices.size()); }
  bool is_func(int i) const;
  const Component& component(int i) const { return components.at(i - 1); }
};

InclusionProblem make_problem(std::vector<Component> components);

}  // namespace lyapcert
