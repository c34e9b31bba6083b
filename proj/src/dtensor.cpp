#include "dendro/dtensor.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dendro/omega.hpp"

namespace dendro {

namespace {

using State = std::map<std::pair<int, int>, char>;

std::string state_key(const State& st) {
  std::string k;
  for (const auto& [l, c] : st) k += std::to_string(l.first) + "," + std::to_string(l.second) + c + ";";
  return k;
}

PercolationTree realize(const Tree& s, const Tree& t, const State& st) {
  PercolationTree p;
  std::map<std::pair<int, int>, int> idx;
  std::vector<std::string> names;
  for (const auto& [l, c] : st) {
    idx[l] = static_cast<int>(p.label.size());
    p.label.push_back(l);
    p.kind.push_back(c);
    names.push_back(s.name(l.first) + "|" + t.name(l.second));
  }
  std::vector<std::vector<int>> kids(p.label.size());
  std::vector<char> leaf(p.label.size(), 0);
  for (size_t e = 0; e < p.label.size(); ++e) {
    auto [a, b] = p.label[e];
    if (p.kind[e] == 'L') {
      leaf[e] = 1;
      continue;
    }
    std::vector<std::pair<int, int>> ins;
    if (p.kind[e] == 'S')
      for (int x : s.inputs(a)) ins.push_back({x, b});
    else
      for (int y : t.inputs(b)) ins.push_back({a, y});
    for (const auto& l : ins) {
      auto it = idx.find(l);
      if (it == idx.end()) throw std::logic_error("percolation tree misses an input edge");
      kids[e].push_back(it->second);
    }
  }
  p.tree = Tree::from_kids(names, kids, leaf, false);
  p.key = state_key(st);
  return p;
}

char kind_for(const Tree& s, const Tree& t, int a, int b, char prefer) {
  bool vs = s.has_vertex(a), vt = t.has_vertex(b);
  if (!vs && !vt) return 'L';
  if (!vs) return 'T';
  if (!vt) return 'S';
  return prefer;
}

}  // namespace

PercolationPoset percolation_poset(const Tree& s, const Tree& t, int max_vertices) {
  if (s.vertex_count() > max_vertices || t.vertex_count() > max_vertices)
    throw ScaleLimit("percolation trees are limited to factors with at most " + std::to_string(max_vertices) +
                     " vertices");
  PercolationPoset out;
  out.s = s;
  out.t = t;
  State top;
  for (int a = 0; a < s.size(); ++a) top[{a, t.root()}] = kind_for(s, t, a, t.root(), 'S');
  for (int l : s.leaves())
    for (int b = 0; b < t.size(); ++b) top[{l, b}] = kind_for(s, t, l, b, 'T');
  std::map<std::string, int> seen;
  std::vector<State> states{top};
  seen[state_key(top)] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    State st = states[cur];
    for (const auto& [l, c] : st) {
      auto [v, w] = l;
      if (c != 'S' || !t.has_vertex(w)) continue;
      bool ok = true;
      for (int x : s.inputs(v)) {
        auto it = st.find({x, w});
        if (it == st.end() || it->second != 'T') ok = false;
      }
      if (!ok) continue;
      State next = st;
      for (int x : s.inputs(v)) next.erase({x, w});
      next[{v, w}] = 'T';
      for (int y : t.inputs(w)) {
        if (next.count({v, y})) throw std::logic_error("percolation label repeated");
        next[{v, y}] = 'S';
      }
      std::string k = state_key(next);
      auto it = seen.find(k);
      int id;
      if (it == seen.end()) {
        id = static_cast<int>(states.size());
        seen[k] = id;
        states.push_back(next);
        queue.push_back(id);
      } else {
        id = it->second;
      }
      out.covers.push_back({cur, id});
    }
  }
  for (const auto& st : states) out.elements.push_back(realize(s, t, st));
  std::sort(out.covers.begin(), out.covers.end());
  out.covers.erase(std::unique(out.covers.begin(), out.covers.end()), out.covers.end());
  std::vector<int> outdeg(states.size(), 0);
  for (const auto& [a, b] : out.covers) ++outdeg[a];
  int minimal = 0;
  for (int i = 0; i < static_cast<int>(states.size()); ++i)
    if (outdeg[i] == 0) {
      out.bottom = i;
      ++minimal;
    }
  if (minimal != 1) out.bottom = -1;
  return out;
}

bool validate_percolation(const Tree& s, const Tree& t, const PercolationTree& p, std::string* failure) {
  auto bad = [&](const std::string& m) {
    if (failure) *failure = m;
    return false;
  };
  const Tree& x = p.tree;
  std::set<std::pair<int, int>> labels(p.label.begin(), p.label.end());
  if (labels.size() != p.label.size()) return bad("repeated label");
  if (p.label[x.root()] != std::make_pair(s.root(), t.root())) return bad("root is not labeled by the two roots");
  for (int e = 0; e < x.size(); ++e) {
    auto [a, b] = p.label[e];
    if (x.is_leaf(e)) {
      if (!s.is_leaf(a) || !t.is_leaf(b) || p.kind[e] != 'L') return bad("leaf " + x.name(e) + " is not a pair of leaves");
      continue;
    }
    std::vector<std::pair<int, int>> want, got;
    if (p.kind[e] == 'S') {
      if (!s.has_vertex(a)) return bad("S vertex on a leaf of S");
      for (int c : s.inputs(a)) want.push_back({c, b});
    } else if (p.kind[e] == 'T') {
      if (!t.has_vertex(b)) return bad("T vertex on a leaf of T");
      for (int c : t.inputs(b)) want.push_back({a, c});
    } else {
      return bad("vertex without a kind");
    }
    for (int c : x.inputs(e)) got.push_back(p.label[c]);
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    if (want != got) return bad("inputs of " + x.name(e) + " do not match its vertex");
  }
  std::vector<std::pair<int, int>> leaves, expect;
  for (int e : x.leaves()) leaves.push_back(p.label[e]);
  for (int a : s.leaves())
    for (int b : t.leaves()) expect.push_back({a, b});
  std::sort(leaves.begin(), leaves.end());
  if (leaves != expect) return bad("leaves are not the pairs of leaves");
  return true;
}

std::optional<std::vector<int>> swap_anti_isomorphism(const PercolationPoset& st, const PercolationPoset& ts) {
  if (st.elements.size() != ts.elements.size()) return std::nullopt;
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(ts.elements.size()); ++i) idx[ts.elements[i].key] = i;
  std::vector<int> f;
  for (const auto& p : st.elements) {
    State sw;
    for (size_t e = 0; e < p.label.size(); ++e) {
      char k = p.kind[e] == 'S' ? 'T' : p.kind[e] == 'T' ? 'S' : 'L';
      sw[{p.label[e].second, p.label[e].first}] = k;
    }
    auto it = idx.find(state_key(sw));
    if (it == idx.end()) return std::nullopt;
    f.push_back(it->second);
  }
  std::set<std::pair<int, int>> reversed;
  for (const auto& [a, b] : st.covers) reversed.insert({f[b], f[a]});
  if (reversed != std::set<std::pair<int, int>>(ts.covers.begin(), ts.covers.end())) return std::nullopt;
  return f;
}

std::optional<std::vector<int>> find_dag_isomorphism(int n, const std::vector<std::pair<int, int>>& a,
                                                     const std::vector<std::pair<int, int>>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::set<std::pair<int, int>> ea(a.begin(), a.end()), eb(b.begin(), b.end());
  std::vector<int> ina(n), outa(n), inb(n), outb(n);
  for (auto [x, y] : a) ++outa[x], ++ina[y];
  for (auto [x, y] : b) ++outb[x], ++inb[y];
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j] || ina[i] != inb[j] || outa[i] != outb[j]) continue;
      bool ok = true;
      for (int k = 0; k < i && ok; ++k) {
        if (ea.count({k, i}) != eb.count({f[k], j})) ok = false;
        if (ea.count({i, k}) != eb.count({j, f[k]})) ok = false;
      }
      if (!ok) continue;
      f[i] = j;
      used[j] = 1;
      if (rec(i + 1)) return true;
      used[j] = 0;
    }
    f[i] = -1;
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return f;
}

std::string percolation_label(const PercolationPoset& p, int element) {
  const auto& e = p.elements[element];
  std::ostringstream os;
  for (int x : e.tree.dfs_order()) {
    if (x != e.tree.dfs_order().front()) os << " ";
    os << e.tree.name(x);
    if (e.kind[x] == 'S') os << "[o]";
    if (e.kind[x] == 'T') os << "[*]";
  }
  return os.str();
}

std::string poset_to_dot(const PercolationPoset& p) {
  std::ostringstream os;
  os << "digraph percolation {\n  rankdir=TB;\n";
  for (int i = 0; i < static_cast<int>(p.elements.size()); ++i)
    os << "  n" << i << " [label=\"T" << i + 1 << "\\n" << percolation_label(p, i) << "\"];\n";
  for (const auto& [a, b] : p.covers) os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

DendroidalSet tensor_representables(const Tree& s, const Tree& t, const CatalogPtr& c, int max_vertices) {
  auto poset = percolation_poset(s, t, max_vertices);
  int nt = t.size();
  DendroidalSet x(
      c,
      [](int, int, const std::vector<int>& map, const Dendrex& d) {
        Dendrex out;
        for (int e : map) out.push_back(d[e]);
        return out;
      },
      "tensor(" + canonical_code(s, false) + "," + canonical_code(t, false) + ")");
  for (const auto& p : poset.elements)
    for (int r = 0; r < c->size(); ++r)
      for (const auto& m : hom_maps(c->shape(r), p.tree)) {
        Dendrex d;
        for (int e : m) d.push_back(p.label[e].first * nt + p.label[e].second);
        x.add(r, std::move(d));
      }
  return x;
}

}  // namespace dendro
