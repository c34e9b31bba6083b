#include <gtest/gtest.h>

#include <map>
#include <set>

#include "dendro/wcon.hpp"

using namespace dendro;

namespace {

OperadPtr one_op(int n) { return std::make_shared<const TabulatedOperad>(one_op_per_arity(n, true)); }

// binary planar trees with n leaves
long catalan(int n) {
  if (n <= 1) return 1;
  long s = 0;
  for (int k = 1; k < n; ++k) s += catalan(k) * catalan(n - k);
  return s;
}

// planar trees with n leaves and vertices of arity >= 2: a root of arity k >= 2
// over an ordered list of k such trees
long schroeder(int n) {
  if (n == 1) return 1;
  // ways[m][j]: ordered lists of j trees with m leaves in total
  std::vector<std::vector<long>> ways(n + 1, std::vector<long>(n + 1, 0));
  ways[0][0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int j = 1; j <= m; ++j)
      for (int first = 1; first <= m; ++first)
        if (first < n) ways[m][j] += schroeder(first) * ways[m - first][j - 1];
  long s = 0;
  for (int k = 2; k <= n; ++k) s += ways[n][k];
  return s;
}

}  // namespace

TEST(WCells, SmallAssociahedra) {
  auto two = w_cells(one_op(2), 2);
  EXPECT_EQ(two.cells.size(), 1u);
  auto three = w_cells(one_op(3), 3);
  EXPECT_EQ(three.cells_by_dim, (std::vector<long>{3, 2}));
  EXPECT_EQ(three.euler, 1);
  auto four = w_cells(one_op(4), 4);
  EXPECT_EQ(four.cells_by_dim, (std::vector<long>{11, 15, 5}));
  EXPECT_EQ(four.euler, 1);
}

TEST(WCells, FacesAreDistinctAndGraded) {
  for (int n = 2; n <= 5; ++n) {
    auto f = w_cells(one_op(n), n);
    std::vector<std::set<int>> faces(f.cells.size());
    std::vector<int> raw(f.cells.size(), 0);
    for (const auto& [c, d] : f.faces) {
      EXPECT_EQ(f.cells[d].dim, f.cells[c].dim - 1);
      faces[c].insert(d);
      ++raw[c];
    }
    for (size_t c = 0; c < f.cells.size(); ++c) {
      EXPECT_EQ(raw[c], 2 * f.cells[c].dim);
      EXPECT_EQ(static_cast<int>(faces[c].size()), raw[c]);
    }
    std::set<std::string> keys;
    for (const auto& c : f.cells) EXPECT_TRUE(keys.insert(c.key).second);
  }
}

TEST(WCells, CubicalBoundaryOfBoundaryVanishes) {
  // each codimension 2 face is reached from a cell along exactly two routes
  auto f = w_cells(one_op(5), 5);
  std::vector<std::vector<int>> down(f.cells.size());
  for (const auto& [c, d] : f.faces) down[c].push_back(d);
  for (size_t c = 0; c < f.cells.size(); ++c) {
    std::map<int, int> routes;
    for (int d : down[c])
      for (int e : down[d]) ++routes[e];
    for (const auto& [e, k] : routes) EXPECT_EQ(k, 2);
  }
}

TEST(Associahedra, SummaryMatchesOracles) {
  for (int n = 2; n <= 7; ++n) {
    auto s = associahedron_summary(n);
    EXPECT_EQ(s.euler, 1) << n;
    EXPECT_EQ(s.binary_vertices, catalan(n)) << n;
    EXPECT_EQ(s.vertex_count, schroeder(n)) << n;
  }
  EXPECT_EQ(associahedron_summary(3).vertex_count, 3);
  EXPECT_THROW(associahedron_summary(8), ScaleLimit);
  EXPECT_THROW(associahedron_summary(1), ScaleLimit);
}

TEST(WCells, LabeledCellsDeformToOperations) {
  // W(P)(n) is a union of contractible pieces, one per operation of arity n
  for (int n = 2; n <= 4; ++n) {
    auto as = std::make_shared<const TabulatedOperad>(make_as(n, false));
    EXPECT_EQ(w_cells(as, n).euler, factorial(n)) << n;
  }
  auto unital = std::make_shared<const TabulatedOperad>(make_as(3, true));
  EXPECT_THROW(w_cells(unital, 3), std::invalid_argument);
}

TEST(WCatHom, ObjectCounts) {
  std::vector<long> expect{1, 1, 3, 11, 45};
  for (int n = 1; n <= 5; ++n) {
    auto h = w_cat_hom(n);
    EXPECT_EQ(h.object_count, expect[n - 1]);
    EXPECT_EQ(h.object_count, schroeder(n));
    EXPECT_TRUE(h.contractible);
  }
  // objects match the vertices of the cell complex
  for (int n = 2; n <= 5; ++n) EXPECT_EQ(w_cat_hom(n).object_count, w_cells(one_op(n), n).cells_by_dim[0]);
}
