#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dendro/operads.hpp"
#include "dendro/trees.hpp"

namespace dendro {

// A term is a planar tree of generators stored in preorder. A symbol below kVar
// is a generator index; kVar + k is the variable k. Variables occur exactly once.
constexpr char16_t kVar = 0x8000;

struct Term {
  std::u16string s;
  std::vector<int> dom;  // color of each variable
  int cod = 0;

  bool operator==(const Term& o) const { return s == o.s && dom == o.dom && cod == o.cod; }
  bool operator<(const Term& o) const {
    if (s.size() != o.s.size()) return s.size() < o.s.size();
    if (s != o.s) return s < o.s;
    if (cod != o.cod) return cod < o.cod;
    return dom < o.dom;
  }
  int arity() const { return static_cast<int>(dom.size()); }
};

struct TermHash {
  size_t operator()(const Term& t) const;
};

struct Generator {
  std::string name;
  std::vector<int> dom;
  int cod = 0;
};

struct Presentation {
  std::vector<std::string> colors;
  std::vector<Generator> generators;
  std::vector<std::pair<Term, Term>> relations;
  bool planar = false;

  int color_index(const std::string& c) const;
  int generator_index(const std::string& g) const;
};

// Throws std::invalid_argument on a malformed presentation.
void validate_presentation(const Presentation& p);

int term_size(const Term& t);
Term var_term(int color);
Term generator_term(const Presentation& p, int g);
// g(args...) with the variables of the arguments numbered consecutively
Term apply(const Presentation& p, int g, const std::vector<Term>& args);
// f o_i g
Term substitute(const Term& f, int i, const Term& g);
// dom(t*s)[k] = dom(t)[s[k]]
Term relabel(const Term& t, const Perm& s);
std::string to_string(const Presentation& p, const Term& t);
// Parses "mu(x0,mu(x1,x2))"; a bare variable needs the color hint.
Term parse_term(const Presentation& p, const std::string& text, int color_hint = -1);

// All terms obtained by one application of a relation (either direction)
// whose size stays at most max_size.
void rewrites(const Presentation& p, const Term& t, int max_size, std::vector<Term>& out, bool* pruned = nullptr);

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

struct Budget {
  int max_size = 6;
  long max_visited = 2000000;
};

Verdict terms_equal(const Presentation& p, const Term& a, const Term& b, const Budget& budget = {});

// Closure of a term under rewriting within the budget.
struct Closure {
  std::unordered_set<Term, TermHash> terms;
  bool saturated = false;  // no new terms and nothing pruned by size
  bool pruned = false;
  bool capped = false;
};
Closure term_closure(const Presentation& p, const Term& a, const Budget& budget);

struct TabulateResult {
  Verdict status = Verdict::Unknown;  // Yes when stable
  TabulatedOperad operad;
  std::vector<Term> representatives;  // per operation
  std::string reason;
};
// All terms of size <= size_bound + 1 and arity <= arity_bound, identified by the
// rewriting closure. Stable when every class has a member of size <= size_bound
// and every composite of representatives is found.
TabulateResult tabulate(const Presentation& p, int arity_bound, int size_bound);

// Enumerates terms of the given maximal size and arity.
std::vector<Term> enumerate_terms(const Presentation& p, int max_size, int max_arity);

// ---- standard presentations ----
Presentation as_presentation();
Presentation comm_presentation();
// one binary generator and no relations
Presentation free_binary_presentation(bool planar = false);
Presentation unit_presentation();
// one generator "v<edge>" per vertex of T (symmetric), no relations
Presentation tree_presentation(const Tree& t);

// Leaf order of the right hand side of an interchange relation: position k holds
// the variable i*m + j where k = j*n + i.
Perm interchange_perm(int n, int m);
Presentation bv_tensor_presentation(const Presentation& p, const Presentation& q);

// Presentation renaming check: same colors, generators and relations up to a bijection
// of generator names that is given by matching profiles in order.
bool same_presentation_shape(const Presentation& a, const Presentation& b);

}  // namespace dendro
