#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dendro/errors.hpp"
#include "dendro/operads.hpp"
#include "dendro/trees.hpp"

namespace dendro {

// A cube of W(P)(n): a reduced planar tree in standard form with labeled vertices,
// and inner edges of length one or of free length.
struct WCell {
  TreePtr tree;
  std::vector<int> labels;  // per edge, the operation at its vertex; -1 on leaves
  std::vector<char> free;   // per edge; only inner edges may be free
  int dim = 0;
  std::string key;
};

struct FacePoset {
  int n = 0;
  std::vector<WCell> cells;                // sorted by dimension, then key
  std::vector<std::pair<int, int>> faces;  // (cell, codimension one face)
  std::vector<long> cells_by_dim;
  long euler = 0;
};

// Planar W-construction on a one-colored operad without nullary or non-identity unary
// operations. Throws ScaleLimit above max_n leaves.
FacePoset w_cells(const OperadPtr& p, int n, int max_n = 7);
std::string face_poset_to_dot(const FacePoset& f);
std::string cell_label(const WCell& c);

struct AssociahedronSummary {
  std::vector<long> cells_by_dim;
  long euler = 0;
  long vertex_count = 0;
  long binary_vertices = 0;  // vertices whose tree is binary
};
// W of the non-unital associative operad, for 2 <= n <= 7
AssociahedronSummary associahedron_summary(int n);

struct WCatHom {
  long object_count = 0;
  bool contractible = false;
};
// objects are the reduced planar trees with n leaves, joined by single inner edge contractions
WCatHom w_cat_hom(int n, int max_n = 7);

}  // namespace dendro
