#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dendro/perm.hpp"
#include "dendro/trees.hpp"

namespace dendro {

class OperadError : public std::runtime_error {
 public:
  enum class Kind { NotIso, BoundExceeded, ColorMismatch, Invalid };
  OperadError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
  Kind kind;
};

// A colored operad with finitely many operations up to an arity bound, stored
// as explicit tables. The right action satisfies dom(f*s)[k] = dom(f)[s[k]].
class TabulatedOperad {
 public:
  struct Op {
    std::vector<int> dom;
    int cod = 0;
    std::string label;
  };

  TabulatedOperad() = default;
  TabulatedOperad(std::vector<std::string> colors, int arity_bound, bool planar, bool empty_above_bound);

  const std::vector<std::string>& colors() const { return colors_; }
  int color_count() const { return static_cast<int>(colors_.size()); }
  int color_index(const std::string& c) const;
  bool planar() const { return planar_; }
  int arity_bound() const { return arity_bound_; }
  // true when no operations exist above the bound (so the tables are complete)
  bool empty_above_bound() const { return empty_above_; }
  int size() const { return static_cast<int>(ops_.size()); }
  const Op& op(int f) const { return ops_[f]; }
  int arity(int f) const { return static_cast<int>(ops_[f].dom.size()); }

  const std::vector<int>& hom(const std::vector<int>& dom, int cod) const;
  const std::vector<int>& ops_of_arity(int n) const;
  std::vector<std::pair<std::vector<int>, int>> nonempty_profiles() const;

  int identity(int c) const { return ids_[c]; }
  // f o_i g, or -1 when the colors do not match or the result is above the bound
  int compose(int f, int i, int g) const;
  // f(g_0, ..., g_{n-1}); -1 when undefined
  int compose_full(int f, const std::vector<int>& gs) const;
  int act(int f, const Perm& sigma) const;
  int find_label(const std::string& label) const;

  // construction
  int add_op(Op op);
  void set_identity(int c, int f);
  void set_compose(int f, int i, int g, int h);
  void set_act(int f, const Perm& sigma, int h);
  std::string name;

 private:
  static uint64_t key(int f, int i, int g) {
    return (static_cast<uint64_t>(f) << 36) | (static_cast<uint64_t>(g) << 8) | static_cast<uint64_t>(i);
  }
  std::vector<std::string> colors_;
  int arity_bound_ = 0;
  bool planar_ = false;
  bool empty_above_ = false;
  std::vector<Op> ops_;
  std::vector<int> ids_;
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> hom_;
  std::vector<std::vector<int>> by_arity_;
  std::unordered_map<uint64_t, int> comp_;
  std::vector<std::vector<int>> act_;
  std::unordered_map<std::string, int> by_label_;
};

using OperadPtr = std::shared_ptr<const TabulatedOperad>;

struct OperadCheck {
  bool units = true;
  bool associative = true;
  bool action = true;
  bool equivariant = true;
  std::string failure;
  bool ok() const { return units && associative && action && equivariant; }
};
OperadCheck validate_operad(const TabulatedOperad& p);

// Tabulates an operad from explicit values. V must be ordered. The caller lists
// every operation up to the bound; composites above the bound are dropped.
template <class V>
struct OperadBuilder {
  std::vector<std::string> colors;
  int arity_bound = 0;
  bool planar = false;
  bool empty_above_bound = false;
  std::function<std::pair<std::vector<int>, int>(const V&)> profile;
  std::function<std::optional<V>(const V&, int, const V&)> compose;
  std::function<V(const V&, const Perm&)> act;
  std::function<V(int)> identity;
  std::function<std::string(const V&)> label;

  TabulatedOperad build(const std::vector<V>& values) const {
    TabulatedOperad p(colors, arity_bound, planar, empty_above_bound);
    std::map<V, int> id;
    for (const auto& v : values) {
      if (id.count(v)) continue;
      auto [dom, cod] = profile(v);
      if (static_cast<int>(dom.size()) > arity_bound) continue;
      id[v] = p.add_op({dom, cod, label ? label(v) : std::string()});
    }
    auto lookup = [&](const V& v) {
      auto it = id.find(v);
      if (it == id.end()) throw OperadError(OperadError::Kind::Invalid, "operation missing from listing");
      return it->second;
    };
    for (int c = 0; c < static_cast<int>(colors.size()); ++c) p.set_identity(c, lookup(identity(c)));
    std::vector<const V*> val(id.size());
    for (const auto& [v, i] : id) val[i] = &v;
    for (int f = 0; f < p.size(); ++f) {
      int n = p.arity(f);
      for (int i = 0; i < n; ++i) {
        int c = p.op(f).dom[i];
        for (int g = 0; g < p.size(); ++g) {
          if (p.op(g).cod != c || n + p.arity(g) - 1 > arity_bound) continue;
          auto h = compose(*val[f], i, *val[g]);
          if (h) p.set_compose(f, i, g, lookup(*h));
        }
      }
      if (!planar)
        for (const auto& s : all_perms(n)) p.set_act(f, s, lookup(act(*val[f], s)));
      else
        p.set_act(f, identity_perm(n), f);
    }
    return p;
  }
};

// ---- standard operads ----
TabulatedOperad make_as(int arity_bound, bool with_unit = true);
TabulatedOperad make_comm(int arity_bound, bool with_unit = true);
// one operation in every arity 1..bound, the unary one being the identity, trivial action
TabulatedOperad one_op_per_arity(int arity_bound, bool planar = true);
// The free operad on the vertices of a tree; operations are (root, ordered leaves).
TabulatedOperad free_operad_on_tree(const Tree& t);
// The terminal one-color operad with only an identity (the unit for the tensor product).
TabulatedOperad make_unit_operad();
// Environment operad of finite sets: colors are sets of the given sizes,
// operations A_1 x ... x A_n -> B are all functions.
// Throws ScaleLimit above 50000 operations.
TabulatedOperad environment_operad(const std::vector<int>& set_sizes, int arity_bound);
// decode an environment operation into its function table (row-major in the inputs)
std::vector<int> environment_table(const TabulatedOperad& e, int f);

struct FiniteCategory {
  struct Arrow {
    int src = 0;
    int tgt = 0;
    std::string name;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identity;           // per object
  std::vector<std::vector<int>> comp;  // comp[g][f] = g after f, -1 if not composable

  bool validate() const;
  std::vector<int> hom(int a, int b) const;
  bool is_iso(int f) const;
};
bool isomorphic_categories(const FiniteCategory& a, const FiniteCategory& b);

FiniteCategory terminal_category();
// two objects and an isomorphism between them
FiniteCategory iso_category();
// category from a finite poset given by a relation matrix (reflexive, transitive)
FiniteCategory poset_category(const std::vector<std::vector<bool>>& le);

TabulatedOperad j_lower(const FiniteCategory& c);
FiniteCategory j_upper(const TabulatedOperad& p);
// Unary part C, a singleton in every profile of arity >= 2. Nullary singletons are
// included only when every hom-set of C is a singleton (then composites land uniquely).
TabulatedOperad j_star(const FiniteCategory& c, int arity_bound);

// ---- functors ----
struct OperadFunctor {
  OperadPtr source;
  OperadPtr target;
  std::vector<int> color_map;
  std::vector<int> op_map;
  bool operator==(const OperadFunctor& o) const { return color_map == o.color_map && op_map == o.op_map; }
};

bool validate_functor(const OperadFunctor& f, std::string* failure = nullptr);
OperadFunctor identity_functor(const OperadPtr& p);

// A small generating set with a derivation of every operation from it.
struct Derivation {
  enum class Kind { Identity, Generator, Act, Compose } kind;
  int a = -1, b = -1, i = -1;  // Act: a, perm rank i; Compose: a o_i b; Identity: color a
};
struct GeneratingSet {
  std::vector<int> generators;
  std::vector<Derivation> derivation;  // per operation
  std::vector<int> order;              // operations in an order where derivations precede use
};
GeneratingSet generating_set(const TabulatedOperad& p);

struct FunctorOptions {
  long limit = -1;              // stop after this many functors
  std::mt19937* rng = nullptr;  // randomize the search order
  std::vector<int> color_map;   // optional fixed color map (-1 entries free)
};
std::vector<OperadFunctor> enumerate_functors(const OperadPtr& p, const OperadPtr& q, const FunctorOptions& opt = {});

bool is_invertible(const TabulatedOperad& p, int f, int* inverse_out = nullptr);
bool is_isofibration(const OperadFunctor& f);
bool is_equivalence(const OperadFunctor& f);
// the collapse As -> Comm
OperadFunctor collapse_functor(const OperadPtr& as, const OperadPtr& comm);

struct TransferResult {
  OperadFunctor g;
  bool functor_ok = false;
  bool natural = false;
  bool unique = false;
};
// iso[p] is a unary invertible operation of the target with domain F(p).
TransferResult transfer_algebra(const OperadFunctor& f, const std::vector<int>& iso);

}  // namespace dendro
