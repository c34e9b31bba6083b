#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dendro/dsets.hpp"
#include "dendro/errors.hpp"
#include "dendro/trees.hpp"

namespace dendro {

// A shuffle of S and T. Edges carry pairs (edge of S, edge of T) and are named "s|t".
// An S vertex at (v, t) has inputs (v_i, t); a T vertex at (s, w) has inputs (s, w_j).
struct PercolationTree {
  Tree tree;
  std::vector<std::pair<int, int>> label;  // per edge
  std::vector<char> kind;                  // per edge: 'S', 'T' or 'L' for a leaf
  std::string key;                         // sorted labels and kinds
};

struct PercolationPoset {
  Tree s;
  Tree t;
  std::vector<PercolationTree> elements;     // breadth first from the top
  std::vector<std::pair<int, int>> covers;  // (upper, lower), one per interchange move
  int top = 0;
  int bottom = -1;
};

// Throws ScaleLimit when S or T has more than max_vertices vertices.
PercolationPoset percolation_poset(const Tree& s, const Tree& t, int max_vertices = 4);
bool validate_percolation(const Tree& s, const Tree& t, const PercolationTree& p, std::string* failure = nullptr);
// element i of the first poset -> element of the second, reversing the order
std::optional<std::vector<int>> swap_anti_isomorphism(const PercolationPoset& st, const PercolationPoset& ts);
// isomorphism of directed graphs on n vertices given by edge lists
std::optional<std::vector<int>> find_dag_isomorphism(int n, const std::vector<std::pair<int, int>>& a,
                                                     const std::vector<std::pair<int, int>>& b);
std::string poset_to_dot(const PercolationPoset& p);
std::string percolation_label(const PercolationPoset& p, int element);

// Union of the images of the representables of all percolation trees. Dendrices are
// edge colorings by pairs s * |T| + t.
DendroidalSet tensor_representables(const Tree& s, const Tree& t, const CatalogPtr& c, int max_vertices = 4);

}  // namespace dendro
