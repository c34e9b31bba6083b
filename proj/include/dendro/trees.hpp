#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dendro {

class TreeError : public std::runtime_error {
 public:
  enum class Kind {
    NoRoot,
    MultipleRoots,
    Cycle,
    LeafNotMaximal,
    UnknownEdge,
    DuplicateEdge,
    BadPlanarOrder,
    RootNotLeafOfT,
    EdgeClash,
    NoVertex,
    Parse,
  };
  TreeError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

const char* to_string(TreeError::Kind k);

// A rooted tree given by its edges. Every edge that is not a leaf carries a
// vertex whose inputs are the children of the edge, so a maximal edge that is
// not a leaf carries a nullary vertex. Vertices are named by their output edge.
class Tree {
 public:
  Tree();  // the unit tree with a single edge "0"

  static Tree build(const std::vector<std::string>& edges,
                    const std::map<std::string, std::string>& parent,
                    const std::vector<std::string>& leaves);
  static Tree build_planar(const std::vector<std::string>& edges,
                           const std::map<std::string, std::string>& parent,
                           const std::vector<std::string>& leaves,
                           const std::map<std::string, std::vector<std::string>>& order);
  // Index form: parent[i] == -1 for the root; kids lists give the input order.
  static Tree from_kids(std::vector<std::string> names, std::vector<std::vector<int>> kids,
                        std::vector<char> leaf, bool planar);

  static Tree eta(const std::string& e = "0");
  static Tree corolla(int n);  // root "0", leaves "1".."n"
  static Tree linear(int n);   // L_n: edges "0" (root) .. "n" (leaf)

  int size() const { return static_cast<int>(names_.size()); }
  int root() const { return root_; }
  int parent(int e) const { return parent_[e]; }
  const std::vector<int>& inputs(int e) const { return kids_[e]; }
  int arity(int e) const { return static_cast<int>(kids_[e].size()); }
  bool is_leaf(int e) const { return leaf_[e] != 0; }
  bool has_vertex(int e) const { return leaf_[e] == 0; }
  bool is_inner(int e) const { return e != root_ && leaf_[e] == 0; }
  const std::string& name(int e) const { return names_[e]; }
  const std::vector<std::string>& names() const { return names_; }
  int find(const std::string& name) const;
  bool planar() const { return planar_; }
  Tree with_planar(bool p) const;

  int vertex_count() const;
  std::vector<int> leaves() const;
  std::vector<int> inner_edges() const;
  std::vector<int> vertices() const;  // output edges of vertices
  bool is_linear() const;
  bool is_corolla() const { return vertex_count() == 1; }
  bool is_eta() const { return size() == 1 && is_leaf(0); }
  // a <= b in the tree order: a lies on the path from b down to the root
  bool below(int a, int b) const;
  // edge order from the root, parents before children, inputs in stored order
  std::vector<int> dfs_order() const;

  bool operator==(const Tree& o) const;
  bool operator!=(const Tree& o) const { return !(*this == o); }

 private:
  void finish();
  std::vector<std::string> names_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> kids_;
  std::vector<char> leaf_;
  int root_ = 0;
  bool planar_ = false;
  std::unordered_map<std::string, int> index_;
};

using TreePtr = std::shared_ptr<const Tree>;

// AHU-style code. Symmetric codes sort the children codes, planar ones keep order.
std::string canonical_code(const Tree& t, bool planar);
inline std::string canonical_code(const Tree& t) { return canonical_code(t, t.planar()); }
bool is_isomorphic(const Tree& a, const Tree& b, bool planar);

struct StandardForm {
  Tree tree;             // edges renamed "0","1",... root first then BFS
  std::vector<int> iso;  // standard edge index -> original edge index
};
StandardForm standard_form(const Tree& t, bool planar);
inline StandardForm standard_form(const Tree& t) { return standard_form(t, t.planar()); }
Tree tree_from_code(const std::string& code, bool planar);

// Grafts S on T along the root of S, which must be a leaf of T.
Tree graft(const Tree& t, const Tree& s);

struct RootDecomposition {
  Tree corolla;
  std::vector<Tree> subtrees;  // one per input of the root vertex, in order
};
RootDecomposition decompose_root(const Tree& t);
Tree regraft(const RootDecomposition& d);

// Subtree of t above edge e (e becomes its root).
Tree subtree_above(const Tree& t, int e);

struct EnumOptions {
  int max_vertices = 3;
  int max_edges = -1;  // -1: no edge bound (requires leaves >= 0 or reduced)
  int leaves = -1;     // -1: any number of leaves
  bool planar = false;
  bool reduced = false;  // every vertex has at least two inputs
};
std::vector<Tree> enumerate_trees(const EnumOptions& opt);
std::vector<Tree> enumerate_trees(int max_vertices, bool planar, bool reduced);

// Automorphisms of a symmetric tree as edge permutations (identity first).
std::vector<std::vector<int>> automorphisms(const Tree& t);

std::string to_dot(const Tree& t, const std::string& graph_name = "tree");

}  // namespace dendro
