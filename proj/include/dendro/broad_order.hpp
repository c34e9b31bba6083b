#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dendro/trees.hpp"

namespace dendro {

// A broad relation a <= b1+...+bn on a finite carrier. The right hand side is a
// multiset stored as a sorted list of carrier indices; the empty list is the unit.
struct BroadRelation {
  std::vector<std::string> carrier;
  std::set<std::pair<int, std::vector<int>>> relations;

  int index_of(const std::string& a) const;
  void add(int a, std::vector<int> rhs);
  bool holds(int a, const std::vector<int>& rhs) const;
};

struct BroadAxiomReport {
  bool reflexive = false;
  bool transitive = false;
  bool antisymmetric = false;
  bool all() const { return reflexive && transitive && antisymmetric; }
};

BroadAxiomReport check_broad_axioms(const BroadRelation& r);

// Reflexive-transitive closure by fixpoint iteration. Throws std::length_error
// when a right hand side grows beyond max_multiset.
BroadRelation broad_closure(const BroadRelation& r, int max_multiset = 64);

BroadRelation to_broad_poset(const Tree& t);

bool is_dendroidally_ordered(const BroadRelation& b);

}  // namespace dendro
