#include <gtest/gtest.h>

#include "dendro/dold_kan.hpp"

using namespace dendro;

TEST(PlanarShapes, FacesLandInCatalog) {
  auto p = planar_shapes(3);
  for (size_t s = 0; s < p.shapes.size(); ++s)
    for (size_t f = 0; f < p.faces[s].size(); ++f) {
      int r = p.face_shape[s][f];
      ASSERT_GE(r, 0);
      EXPECT_TRUE(is_morphism(*p.shapes[r], *p.shapes[s], p.faces[s][f].map));
    }
}

TEST(Signs, CorollasAreUnconstrained) {
  SignSystem info;
  auto s = solve_signs(1, {}, &info);
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(info.equations, 0);
  EXPECT_EQ(info.rank, 0);
}

TEST(Signs, OneEquationPerSquare) {
  for (int v = 2; v <= 3; ++v) {
    SignSystem info;
    auto s = solve_signs(v, {}, &info);
    ASSERT_TRUE(s.has_value());
    long squares = 0, vars = 0;
    for (const auto& t : s->shapes->shapes) {
      squares += static_cast<long>(subfaces2(*t).size());
      vars += static_cast<long>(faces(*t).size());
    }
    EXPECT_EQ(info.equations, squares);
    EXPECT_EQ(info.variables, vars);
    EXPECT_EQ(count_violations(*s), 0);
  }
}

TEST(Signs, LinearTreesGaugeToAlternating) {
  auto s = solve_signs(3);
  ASSERT_TRUE(s.has_value());
  ASSERT_TRUE(gauge_fix(*s));
  EXPECT_EQ(count_violations(*s), 0);
  const auto& p = *s->shapes;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i <= n; ++i) EXPECT_EQ(s->sign(p.find(Tree::linear(n)), linear_face_index(p, n, i)), i % 2 ? -1 : 1);
}

TEST(Signs, LinearFaceIndexDeletesVertex) {
  auto p = planar_shapes(3);
  // the face d_i of L_3 keeps every edge but 3 - i
  for (int i = 0; i <= 3; ++i) {
    int s = p.find(Tree::linear(3));
    int f = linear_face_index(p, 3, i);
    ASSERT_GE(f, 0);
    const auto& e = p.faces[s][f].face.face.edges;
    EXPECT_EQ(std::count(e.begin(), e.end(), 3 - i), 0);
    EXPECT_EQ(e.size(), 3u);
  }
}

TEST(Signs, SolutionsDifferByGauge) {
  SignSystem info;
  auto a = solve_signs(3, {}, &info);
  auto b = solve_signs(3, {true, 11});
  ASSERT_TRUE(a && b);
  EXPECT_EQ(count_violations(*b), 0);
  EXPECT_TRUE(gauge_between(*a, *b).has_value());
  // kernel dimension equals the gauge dimension: one flip per shape, minus the global flip
  EXPECT_EQ(info.variables - info.rank, static_cast<long>(a->shapes->shapes.size()) - 1);
}

TEST(DSquared, HoldsOnSmallTrees) {
  auto s = solve_signs(3);
  ASSERT_TRUE(s.has_value());
  for (const auto& t : s->shapes->shapes) EXPECT_TRUE(check_d_squared(*t, *s)) << canonical_code(*t, true);
  Tree two_inner = Tree::build_planar({"r", "a", "b", "c", "d", "x", "y"},
                                      {{"a", "r"}, {"b", "r"}, {"c", "a"}, {"d", "a"}, {"x", "b"}, {"y", "b"}},
                                      {"c", "d", "x", "y"}, {{"r", {"a", "b"}}, {"a", {"c", "d"}}, {"b", {"x", "y"}}});
  EXPECT_TRUE(check_d_squared(two_inner, *s));
  EXPECT_TRUE(check_d_squared(Tree::linear(2).with_planar(true), *s));
}

TEST(DSquared, EveryConstrainedMutationBreaks) {
  auto s = solve_signs(3);
  ASSERT_TRUE(s.has_value());
  const auto& p = *s->shapes;
  long tried = 0;
  for (size_t t = 0; t < p.shapes.size(); ++t) {
    if (subfaces2(*p.shapes[t]).empty()) continue;
    for (size_t f = 0; f < p.faces[t].size(); ++f) {
      auto m = *s;
      m.bits[t][f] ^= 1;
      ++tried;
      EXPECT_FALSE(check_d_squared(*p.shapes[t], m)) << p.codes[t] << " face " << f;
    }
  }
  EXPECT_GT(tried, 0);
}

TEST(DSquared, MissingSignThrows) {
  auto s = solve_signs(1);
  ASSERT_TRUE(s.has_value());
  EXPECT_THROW(check_d_squared(Tree::linear(3).with_planar(true), *s), MissingSign);
}
