#pragma once

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "dendro/omega.hpp"
#include "dendro/operads.hpp"
#include "dendro/presentation.hpp"
#include "dendro/trees.hpp"

namespace dendro {

// Standard symmetric trees with at most max_vertices vertices and max_edges edges.
class ShapeCatalog {
 public:
  struct Face {
    ElementaryFace face;
    int shape;             // standard source shape
    std::vector<int> map;  // source -> target edges
  };
  // a codimension 2 face reached through two elementary faces
  struct Square {
    int shape;  // standard shape of the codimension 2 face
    // for each of the two ways: face index of T and the map shape -> face source
    std::vector<std::pair<int, std::vector<int>>> ways;
  };

  ShapeCatalog(int max_vertices, int max_edges = -1);

  int max_vertices() const { return max_vertices_; }
  int max_edges() const { return max_edges_; }
  int max_arity() const { return max_edges_ - 1; }
  int size() const { return static_cast<int>(shapes_.size()); }
  const Tree& shape(int i) const { return *shapes_[i]; }
  const TreePtr& shape_ptr(int i) const { return shapes_[i]; }
  const std::string& code(int i) const { return codes_[i]; }
  // index of the standard form of t, or -1 when out of bound
  int find(const Tree& t) const;
  int find_code(const std::string& code) const;
  int eta() const { return find(Tree::eta()); }
  int linear(int n) const { return find(Tree::linear(n)); }
  int corolla(int n) const { return find(Tree::corolla(n)); }

  const std::vector<Face>& faces(int s) const;
  const std::vector<Square>& squares(int s) const;
  const std::vector<std::vector<int>>& automorphisms(int s) const;
  std::string bound_label() const;

 private:
  int max_vertices_;
  int max_edges_;
  std::vector<TreePtr> shapes_;
  std::vector<std::string> codes_;
  std::unordered_map<std::string, int> by_code_;
  mutable std::vector<std::unique_ptr<std::vector<Face>>> faces_;
  mutable std::vector<std::unique_ptr<std::vector<Square>>> squares_;
  mutable std::vector<std::unique_ptr<std::vector<std::vector<int>>>> autos_;
};

using CatalogPtr = std::shared_ptr<const ShapeCatalog>;

using Dendrex = std::vector<int>;
struct DendrexHash {
  size_t operator()(const Dendrex& d) const;
};

// A presheaf on the shapes of a catalog with explicitly listed dendrices. The
// action is given by a restriction function on dendrex data along edge maps.
class DendroidalSet {
 public:
  using Restrict = std::function<Dendrex(int r, int t, const std::vector<int>& map, const Dendrex& x)>;

  DendroidalSet(CatalogPtr catalog, Restrict restrict, std::string name);

  const ShapeCatalog& catalog() const { return *catalog_; }
  const CatalogPtr& catalog_ptr() const { return catalog_; }
  const std::string& name() const { return name_; }
  int count(int shape) const { return static_cast<int>(dendrices_[shape].size()); }
  long total() const;
  const Dendrex& dendrex(int shape, int x) const { return dendrices_[shape][x]; }
  int find(int shape, const Dendrex& d) const;
  int add(int shape, Dendrex d);
  // removes the listed dendrices of one shape; ids are renumbered in order
  void remove(int shape, std::vector<int> xs);

  Dendrex restrict_data(int r, int t, const std::vector<int>& map, const Dendrex& x) const {
    return restrict_(r, t, map, x);
  }
  // f^*(x) for f: shape r -> shape t; -1 when the result is not listed
  int act(int r, int t, const std::vector<int>& map, int x) const;

 private:
  CatalogPtr catalog_;
  Restrict restrict_;
  std::string name_;
  std::vector<std::vector<Dendrex>> dendrices_;
  std::vector<std::unordered_map<Dendrex, int, DendrexHash>> index_;
};

struct PresheafCheck {
  bool ok = true;
  std::string failure;
  long checked = 0;
};
// closure under restriction, identities and functoriality on all composable pairs
// of stored morphisms (optionally only for shapes up to max_vertices of the target)
PresheafCheck validate_presheaf(const DendroidalSet& x, int max_target_vertices = -1);

DendroidalSet empty_dset(const CatalogPtr& c);
DendroidalSet representable(const Tree& t, const CatalogPtr& c);
// dendrices are edge colors followed by the operation at each vertex (in edge order)
DendroidalSet nerve(const OperadPtr& p, const CatalogPtr& c);
// operad map Omega(T) -> P of a nerve dendrex
OperadFunctor nerve_dendrex_functor(const OperadPtr& p, const Tree& t, const Dendrex& x);

// ---- maps ----
struct DSetMap {
  const DendroidalSet* source = nullptr;
  const DendroidalSet* target = nullptr;
  std::vector<std::vector<int>> map;  // per shape
};
bool validate_map(const DSetMap& f, std::string* failure = nullptr);
// maps Omega[T] -> X, one per dendrex of X_T
std::vector<DSetMap> yoneda_maps(const DendroidalSet& rep, const Tree& t, const DendroidalSet& x);
DSetMap empty_map(const DendroidalSet& empty, const DendroidalSet& x);

// ---- horns ----
struct MatchingFamily {
  int shape = -1;
  int omitted = -1;           // face index of the shape, -1 for a boundary
  std::vector<int> dendrices;  // per face of the shape, -1 at the omitted face
};
// All matching families; limit < 0 means no limit.
std::vector<MatchingFamily> boundary_families(const DendroidalSet& x, int shape, long limit = -1);
std::vector<MatchingFamily> horn_families(const DendroidalSet& x, int shape, int omitted, long limit = -1);
bool is_matching(const DendroidalSet& x, const MatchingFamily& f);
// the family of faces of a dendrex (omitting one face)
MatchingFamily restriction_family(const DendroidalSet& x, int shape, int omitted, int dendrex);
std::vector<int> fill_horn(const DendroidalSet& x, const MatchingFamily& f);

struct KanReport {
  bool holds = true;
  long horns = 0;     // inner horn families examined
  long fillers = 0;   // total fillers found
  std::string witness;  // a failing horn
  std::string within_bound;
};
KanReport inner_kan_report(const DendroidalSet& x, bool strict);
bool is_inner_kan(const DendroidalSet& x);
bool is_strict(const DendroidalSet& x);

// Removes a single dendrex; the result need not be closed under restriction.
DendroidalSet delete_dendrex(const DendroidalSet& x, int shape, int dendrex);
// Removes a dendrex together with every dendrex restricting to it; the result is a sub-presheaf.
DendroidalSet delete_closure(const DendroidalSet& x, int shape, int dendrex);
// Deletes each dendrex of a top shape in turn and records whether an inner horn of
// the shape loses all its fillers. Assumes x is inner Kan.
struct DeletionReport {
  long deletions = 0;
  long broken = 0;
  std::string first_survivor;  // a deletion that kept the inner Kan property
};
DeletionReport top_shape_deletions(const DendroidalSet& x);

// ---- normality ----
bool is_normal(const DendroidalSet& x, std::string* witness = nullptr);
bool is_normal_mono(const DSetMap& f, std::string* witness = nullptr);

// ---- simplicial sets ----
struct FiniteSimplicialSet {
  std::vector<int> count;                             // simplices per dimension 0..N
  std::vector<std::vector<std::vector<int>>> face;    // face[n][i][y] for n >= 1
  std::vector<std::vector<std::vector<int>>> degen;   // degen[n][j][y] for n < N
  int dimension() const { return static_cast<int>(count.size()) - 1; }
  bool operator==(const FiniteSimplicialSet& o) const {
    return count == o.count && face == o.face && degen == o.degen;
  }
};
bool validate_simplicial(const FiniteSimplicialSet& s, std::string* failure = nullptr);
// the standard simplex truncated at dimension dim
FiniteSimplicialSet standard_simplex(int n, int dim);
// nerve of a finite category; simplices are composable chains (objects for n = 0)
FiniteSimplicialSet category_nerve(const FiniteCategory& c, int dim, std::vector<std::vector<std::vector<int>>>* chains = nullptr);
bool simplicial_inner_kan(const FiniteSimplicialSet& s);
// theta^*(y) for a monotone theta: [m] -> [n]
int simplicial_act(const FiniteSimplicialSet& s, const std::vector<int>& theta, int n, int y);
// Delta map [m] -> [n] of an Omega map L_m -> L_n (vertex k <-> edge n - k)
std::vector<int> linear_to_delta(const std::vector<int>& map, int m, int n);

DendroidalSet i_lower(const FiniteSimplicialSet& s, const CatalogPtr& c);
FiniteSimplicialSet i_upper(const DendroidalSet& x);
// true when the two simplicial sets agree under the given bijections per dimension
bool simplicial_iso(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b, const std::vector<std::vector<int>>& bij);

// ---- tau ----
// Colors are the eta dendrices, generators the non-degenerate corolla dendrices,
// relations come from shapes with one inner edge, corolla symmetries and units.
Presentation tau_presentation(const DendroidalSet& x);

bool is_equivalence_dendrex_in_nerve(const TabulatedOperad& p, const Tree& l1, const Dendrex& x);

}  // namespace dendro
