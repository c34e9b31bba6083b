#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dendro/omega.hpp"
#include "dendro/trees.hpp"

namespace dendro {

class MissingSign : public std::runtime_error {
 public:
  explicit MissingSign(const std::string& msg) : std::runtime_error(msg) {}
};

// Planar standard trees with their elementary faces.
struct PlanarShapes {
  int max_vertices = 0;
  int max_edges = 0;
  std::vector<TreePtr> shapes;
  std::vector<std::string> codes;
  std::unordered_map<std::string, int> index;
  std::vector<std::vector<StdFace>> faces;
  std::vector<std::vector<int>> face_shape;  // per face, the index of its source
  int find(const Tree& t) const;             // -1 when out of bound
};
PlanarShapes planar_shapes(int max_vertices, int max_edges = -1);

// One bit per (shape, face); the sign is (-1)^bit.
struct SignAssignment {
  std::shared_ptr<const PlanarShapes> shapes;
  std::vector<std::vector<char>> bits;
  int sign(int shape, int face) const { return bits[shape][face] ? -1 : 1; }
};

struct SignSystem {
  long variables = 0;
  long equations = 0;  // one per codimension 2 face
  long rank = 0;
};

struct SolveOptions {
  bool reverse_pivots = false;  // eliminate variables from the last one
  unsigned free_seed = 0;       // nonzero: random values for free variables
};
// std::nullopt when the parity system has no solution
std::optional<SignAssignment> solve_signs(int max_vertices, const SolveOptions& opt = {}, SignSystem* info = nullptr,
                                          int max_edges = -1);

// number of codimension 2 squares violating anticommutation
long count_violations(const SignAssignment& s);

// Face of L_n deleting the vertex i of [n] (the edge n - i).
int linear_face_index(const PlanarShapes& p, int n, int i);
// Flips along a gauge on linear shapes so that linear faces read (-1)^i; returns
// whether every linear face then matches.
bool gauge_fix(SignAssignment& s);
// a gauge g (per shape) with b = a flipped by g(source) + g(target), if any
std::optional<std::vector<char>> gauge_between(const SignAssignment& a, const SignAssignment& b);

// d o d = 0 on the free module on the subfaces of T
bool check_d_squared(const Tree& t, const SignAssignment& s);

}  // namespace dendro
