#include "dendro/broad_order.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace dendro {

int BroadRelation::index_of(const std::string& a) const {
  auto it = std::find(carrier.begin(), carrier.end(), a);
  return it == carrier.end() ? -1 : static_cast<int>(it - carrier.begin());
}

void BroadRelation::add(int a, std::vector<int> rhs) {
  std::sort(rhs.begin(), rhs.end());
  relations.insert({a, std::move(rhs)});
}

bool BroadRelation::holds(int a, const std::vector<int>& rhs) const {
  std::vector<int> s = rhs;
  std::sort(s.begin(), s.end());
  return relations.count({a, s}) > 0;
}

namespace {

using Rel = std::pair<int, std::vector<int>>;

std::map<int, std::vector<const std::vector<int>*>> by_source(const BroadRelation& r) {
  std::map<int, std::vector<const std::vector<int>*>> m;
  for (const auto& [a, b] : r.relations) m[a].push_back(&b);
  return m;
}

}  // namespace

BroadAxiomReport check_broad_axioms(const BroadRelation& r) {
  BroadAxiomReport rep;
  int n = static_cast<int>(r.carrier.size());
  rep.reflexive = true;
  for (int a = 0; a < n; ++a)
    if (!r.holds(a, {a})) rep.reflexive = false;

  auto src = by_source(r);
  rep.transitive = true;
  for (const auto& [a0, lhs] : r.relations) {
    if (!rep.transitive) break;
    // every choice of b_i with a_i R b_i must give a0 R (b_1+...+b_n)
    std::vector<int> acc;
    std::function<void(size_t)> go = [&](size_t i) {
      if (!rep.transitive) return;
      if (i == lhs.size()) {
        if (!r.holds(a0, acc)) rep.transitive = false;
        return;
      }
      auto it = src.find(lhs[i]);
      if (it == src.end()) return;
      for (const auto* b : it->second) {
        size_t mark = acc.size();
        acc.insert(acc.end(), b->begin(), b->end());
        go(i + 1);
        acc.resize(mark);
      }
    };
    go(0);
  }

  rep.antisymmetric = true;
  for (const auto& [a1, b1] : r.relations) {
    for (int a2 : b1) {
      if (a2 == a1) continue;
      auto it = src.find(a2);
      if (it == src.end()) continue;
      for (const auto* b2 : it->second)
        if (std::find(b2->begin(), b2->end(), a1) != b2->end()) rep.antisymmetric = false;
    }
  }
  return rep;
}

BroadRelation broad_closure(const BroadRelation& r, int max_multiset) {
  BroadRelation out = r;
  for (int a = 0; a < static_cast<int>(r.carrier.size()); ++a) out.add(a, {a});
  std::deque<Rel> work(out.relations.begin(), out.relations.end());
  while (!work.empty()) {
    Rel cur = work.front();
    work.pop_front();
    std::vector<Rel> fresh;
    // substitute into cur
    for (size_t i = 0; i < cur.second.size(); ++i) {
      if (i > 0 && cur.second[i] == cur.second[i - 1]) continue;
      int b = cur.second[i];
      for (const auto& [x, rhs] : out.relations) {
        if (x != b) continue;
        std::vector<int> m = cur.second;
        m.erase(m.begin() + static_cast<long>(i));
        m.insert(m.end(), rhs.begin(), rhs.end());
        std::sort(m.begin(), m.end());
        fresh.push_back({cur.first, m});
      }
    }
    // substitute cur into others
    for (const auto& [x, rhs] : out.relations) {
      for (size_t i = 0; i < rhs.size(); ++i) {
        if (rhs[i] != cur.first) continue;
        std::vector<int> m = rhs;
        m.erase(m.begin() + static_cast<long>(i));
        m.insert(m.end(), cur.second.begin(), cur.second.end());
        std::sort(m.begin(), m.end());
        fresh.push_back({x, m});
        break;
      }
    }
    for (auto& f : fresh) {
      if (static_cast<int>(f.second.size()) > max_multiset)
        throw std::length_error("broad closure exceeded the multiset size cap");
      if (out.relations.insert(f).second) work.push_back(f);
    }
  }
  return out;
}

BroadRelation to_broad_poset(const Tree& t) {
  BroadRelation r;
  r.carrier = t.names();
  for (int e : t.vertices()) r.add(e, t.inputs(e));
  return broad_closure(r, t.size() + 1);
}

namespace {

bool strictly_less(const BroadRelation& b, int a, const std::vector<int>& rhs) {
  if (rhs.size() == 1 && rhs[0] == a) return false;
  return b.holds(a, rhs);
}

// Can multiset m be split into parts p_1..p_n (possibly empty) with s_i <= p_i?
bool splits(const BroadRelation& b, const std::vector<int>& s, const std::vector<int>& m) {
  std::vector<int> assign(m.size(), -1);
  std::function<bool(size_t)> go = [&](size_t k) -> bool {
    if (k == m.size()) {
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> part;
        for (size_t j = 0; j < m.size(); ++j)
          if (assign[j] == static_cast<int>(i)) part.push_back(m[j]);
        if (!b.holds(s[i], part)) return false;
      }
      return true;
    }
    for (size_t i = 0; i < s.size(); ++i) {
      assign[k] = static_cast<int>(i);
      if (go(k + 1)) return true;
    }
    return false;
  };
  return go(0);
}

}  // namespace

bool is_dendroidally_ordered(const BroadRelation& b) {
  int n = static_cast<int>(b.carrier.size());
  if (n == 0) return false;
  auto src = by_source(b);

  // (1) a root below everything
  bool has_root = false;
  for (int r = 0; r < n && !has_root; ++r) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      bool found = false;
      auto it = src.find(r);
      if (it != src.end())
        for (const auto* rhs : it->second)
          if (std::find(rhs->begin(), rhs->end(), a) != rhs->end()) found = true;
      ok = found;
    }
    has_root = ok;
  }
  if (!has_root) return false;

  // (3) no repeated elements on the right
  for (const auto& [a, rhs] : b.relations)
    for (size_t i = 1; i < rhs.size(); ++i)
      if (rhs[i] == rhs[i - 1]) return false;

  // (2) successor
  for (int a = 0; a < n; ++a) {
    std::vector<const std::vector<int>*> up;
    auto it = src.find(a);
    if (it != src.end())
      for (const auto* rhs : it->second)
        if (strictly_less(b, a, *rhs)) up.push_back(rhs);
    if (up.empty()) continue;
    bool found = false;
    for (const auto* s : up) {
      bool ok = true;
      for (const auto* m : up)
        if (!splits(b, *s, *m)) {
          ok = false;
          break;
        }
      if (ok) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace dendro
