#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lyapcert/problem.hpp"

using namespace lyapcert;

TEST_CASE("function and operator indices follow component order") {
  const auto p = make_problem({Component(ComponentClass::maximally_monotone()),
                               Component(ComponentClass::smooth_convex(1.0)),
                               Component(ComponentClass::convex())});
  CHECK(p.m() == 3);
  CHECK(p.func_indices == std::vector<int>{2, 3});
  CHECK(p.op_indices == std::vector<int>{1});
  CHECK(p.is_func(2));
  CHECK_FALSE(p.is_func(1));
  CHECK(p.component(2).has(ClassTag::SmoothConvex));
}

TEST_CASE("intersections keep one kind") {
  const Component c(std::vector<ComponentClass>{ComponentClass::strongly_monotone(1.0),
                                                ComponentClass::lipschitz_operator(2.0)});
  CHECK(c.kind() == ComponentKind::Operator);
  CHECK(c.classes().size() == 2);
  CHECK(c.describe().find(" & ") != std::string::npos);
  CHECK_THROWS_AS(Component(std::vector<ComponentClass>{ComponentClass::convex(), ComponentClass::maximally_monotone()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Component(std::vector<ComponentClass>{}), std::invalid_argument);
}

TEST_CASE("invalid problems") {
  CHECK_THROWS_AS(make_problem({}), std::invalid_argument);
  // gradient dominance only makes sense for a lone function
  CHECK_THROWS_AS(make_problem({Component(ComponentClass::gradient_dominated(0.1)),
                                Component(ComponentClass::convex())}),
                  std::invalid_argument);
  CHECK_NOTHROW(make_problem({Component(ComponentClass::gradient_dominated(0.1))}));
}
