#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dendro/trees.hpp"

namespace dendro {

// An arrow S -> T of the dendroidal category, given by its edge map.
struct OmegaMorphism {
  TreePtr source;
  TreePtr target;
  std::vector<int> map;  // source edge index -> target edge index

  bool operator==(const OmegaMorphism& o) const {
    return *source == *o.source && *target == *o.target && map == o.map;
  }
};

// true when root and the ordered leaves span a subtree of t (distinct leaves)
bool spans_subtree(const Tree& t, int root, const std::vector<int>& leaves);
bool is_morphism(const Tree& s, const Tree& t, const std::vector<int>& map);
OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f);  // g after f
OmegaMorphism identity_morphism(const TreePtr& t);

// All edge maps S -> T, sorted.
std::vector<std::vector<int>> hom_maps(const Tree& s, const Tree& t);
std::vector<OmegaMorphism> hom_set(const TreePtr& s, const TreePtr& t);

// A face of T: the edges kept and which of them are leaves of the face.
struct Subface {
  std::vector<int> edges;   // sorted edge indices of T
  std::vector<int> leaves;  // sorted
  bool operator==(const Subface& o) const { return edges == o.edges && leaves == o.leaves; }
  bool operator<(const Subface& o) const {
    return edges != o.edges ? edges < o.edges : leaves < o.leaves;
  }
};

Subface whole(const Tree& t);
// Face tree with the names of T; fills emb with face index -> T index.
Tree subface_tree(const Tree& t, const Subface& f, std::vector<int>* emb = nullptr);
// Checks that f describes a face of t (a composite of elementary faces).
bool is_subface(const Tree& t, const Subface& f);
Subface image_subface(const Tree& s, const Tree& t, const std::vector<int>& injective_map);

enum class FaceKind { Inner, Top, Root, EdgeInclusion };
const char* to_string(FaceKind k);

struct ElementaryFace {
  FaceKind kind;
  int edge;  // contracted edge, top vertex, root edge, or included edge
  Subface face;
  std::string witness(const Tree& t) const;
};

std::vector<ElementaryFace> faces(const Tree& t);

struct DoubleFactorization {
  Subface beta;
  // two pairs (index into faces(T), index into faces(face tree))
  std::vector<std::pair<int, int>> ways;
};
std::vector<DoubleFactorization> subfaces2(const Tree& t);
std::vector<std::pair<int, int>> double_factorizations(const Tree& t, const Subface& beta);

enum class MorphismKind { InnerFace, OuterFace, Degeneracy, Iso, Composite };
const char* to_string(MorphismKind k);

struct Classification {
  MorphismKind kind;
  std::string witness;  // edge or vertex name in the relevant tree
};
Classification classify(const Tree& s, const Tree& t, const std::vector<int>& map);
inline Classification classify(const OmegaMorphism& f) { return classify(*f.source, *f.target, f.map); }

struct FaceStep {
  ElementaryFace face;  // elementary face of the current tree
  Tree tree;            // the current tree (names of T) before this step
};

struct Factorization {
  // degeneracies: unary vertices of S collapsed, named by their output edge, in order applied
  std::vector<int> collapsed;
  Tree s_prime;               // S with the collapsed vertices removed (names of S)
  std::vector<int> delta;     // S -> S'
  Subface image;              // face of T through which f factors
  Tree face;                  // the face tree (names of T)
  std::vector<int> pi;        // S' -> face, a bijection
  std::vector<FaceStep> chain;  // from T down to the face

  std::vector<int> recompose(const Tree& s, const Tree& t) const;
};

// Deterministic when rng is null; otherwise the order of collapses and face
// peeling is randomized (the data collapsed/pi/image does not depend on it).
Factorization factorize(const Tree& s, const Tree& t, const std::vector<int>& map, std::mt19937* rng = nullptr);

struct Canonical {
  TreePtr tree;          // standard tree
  std::vector<int> iso;  // standard index -> original index
};

// Elementary faces as morphisms between standard trees.
struct StdFace {
  ElementaryFace face;
  TreePtr source;        // standard form of the face tree
  std::vector<int> map;  // source -> T
};
std::vector<StdFace> std_faces(const Tree& t, bool planar = false);

}  // namespace dendro
