#include "dendro/trees.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace dendro {

const char* to_string(TreeError::Kind k) {
  switch (k) {
    case TreeError::Kind::NoRoot: return "NoRoot";
    case TreeError::Kind::MultipleRoots: return "MultipleRoots";
    case TreeError::Kind::Cycle: return "Cycle";
    case TreeError::Kind::LeafNotMaximal: return "LeafNotMaximal";
    case TreeError::Kind::UnknownEdge: return "UnknownEdge";
    case TreeError::Kind::DuplicateEdge: return "DuplicateEdge";
    case TreeError::Kind::BadPlanarOrder: return "BadPlanarOrder";
    case TreeError::Kind::RootNotLeafOfT: return "RootNotLeafOfT";
    case TreeError::Kind::EdgeClash: return "EdgeClash";
    case TreeError::Kind::NoVertex: return "NoVertex";
    case TreeError::Kind::Parse: return "Parse";
  }
  return "?";
}

Tree::Tree() : names_{"0"}, parent_{-1}, kids_{{}}, leaf_{1}, root_(0) { finish(); }

void Tree::finish() {
  index_.clear();
  for (int i = 0; i < size(); ++i) index_.emplace(names_[i], i);
}

int Tree::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

namespace {

Tree build_impl(const std::vector<std::string>& edges, const std::map<std::string, std::string>& parent,
                const std::vector<std::string>& leaves,
                const std::map<std::string, std::vector<std::string>>* order) {
  using K = TreeError::Kind;
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (!idx.emplace(edges[i], i).second) throw TreeError(K::DuplicateEdge, "duplicate edge " + edges[i]);
  }
  if (edges.empty()) throw TreeError(K::NoRoot, "tree has no edges");
  int n = static_cast<int>(edges.size());
  std::vector<int> par(n, -1);
  for (const auto& [c, p] : parent) {
    auto ic = idx.find(c);
    auto ip = idx.find(p);
    if (ic == idx.end()) throw TreeError(K::UnknownEdge, "unknown edge " + c);
    if (ip == idx.end()) throw TreeError(K::UnknownEdge, "unknown edge " + p);
    par[ic->second] = ip->second;
  }
  int root = -1;
  for (int i = 0; i < n; ++i) {
    if (par[i] != -1) continue;
    if (root != -1) throw TreeError(K::MultipleRoots, "edges " + edges[root] + " and " + edges[i] + " both lack a parent");
    root = i;
  }
  if (root == -1) throw TreeError(K::NoRoot, "every edge has a parent");
  for (int i = 0; i < n; ++i) {
    int x = i;
    for (int steps = 0; x != root; ++steps) {
      if (steps > n) throw TreeError(K::Cycle, "parent relation has a cycle through " + edges[i]);
      x = par[x];
    }
  }
  std::vector<std::vector<int>> kids(n);
  for (int i = 0; i < n; ++i)
    if (par[i] != -1) kids[par[i]].push_back(i);
  std::vector<char> leaf(n, 0);
  for (const auto& l : leaves) {
    auto il = idx.find(l);
    if (il == idx.end()) throw TreeError(K::UnknownEdge, "unknown leaf " + l);
    if (!kids[il->second].empty()) throw TreeError(K::LeafNotMaximal, "leaf " + l + " has children");
    leaf[il->second] = 1;
  }
  if (order) {
    for (int i = 0; i < n; ++i) {
      auto it = order->find(edges[i]);
      if (it == order->end()) {
        if (kids[i].size() > 1) throw TreeError(K::BadPlanarOrder, "no input order for " + edges[i]);
        continue;
      }
      std::vector<int> ord;
      for (const auto& c : it->second) {
        auto ic = idx.find(c);
        if (ic == idx.end()) throw TreeError(K::BadPlanarOrder, "unknown edge in order: " + c);
        ord.push_back(ic->second);
      }
      std::vector<int> a = ord, b = kids[i];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) throw TreeError(K::BadPlanarOrder, "input order of " + edges[i] + " does not list its inputs");
      kids[i] = ord;
    }
  }
  return Tree::from_kids(edges, kids, leaf, order != nullptr);
}

}  // namespace

Tree Tree::build(const std::vector<std::string>& edges, const std::map<std::string, std::string>& parent,
                 const std::vector<std::string>& leaves) {
  return build_impl(edges, parent, leaves, nullptr);
}

Tree Tree::build_planar(const std::vector<std::string>& edges, const std::map<std::string, std::string>& parent,
                        const std::vector<std::string>& leaves,
                        const std::map<std::string, std::vector<std::string>>& order) {
  return build_impl(edges, parent, leaves, &order);
}

Tree Tree::from_kids(std::vector<std::string> names, std::vector<std::vector<int>> kids, std::vector<char> leaf,
                     bool planar) {
  Tree t;
  int n = static_cast<int>(names.size());
  t.names_ = std::move(names);
  t.kids_ = std::move(kids);
  t.leaf_ = std::move(leaf);
  t.parent_.assign(n, -1);
  for (int i = 0; i < n; ++i)
    for (int c : t.kids_[i]) t.parent_[c] = i;
  t.root_ = -1;
  for (int i = 0; i < n; ++i)
    if (t.parent_[i] == -1) t.root_ = i;
  t.planar_ = planar;
  t.finish();
  return t;
}

Tree Tree::eta(const std::string& e) { return from_kids({e}, {{}}, {1}, false); }

Tree Tree::corolla(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(n + 1);
  std::vector<char> leaf(n + 1, 1);
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  for (int i = 1; i <= n; ++i) kids[0].push_back(i);
  leaf[0] = 0;
  return from_kids(names, kids, leaf, false);
}

Tree Tree::linear(int n) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(n + 1);
  std::vector<char> leaf(n + 1, 0);
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i) kids[i].push_back(i + 1);
  leaf[n] = 1;
  return from_kids(names, kids, leaf, false);
}

Tree Tree::with_planar(bool p) const {
  Tree t = *this;
  t.planar_ = p;
  return t;
}

int Tree::vertex_count() const {
  int c = 0;
  for (char l : leaf_) c += l ? 0 : 1;
  return c;
}

std::vector<int> Tree::leaves() const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (leaf_[i]) r.push_back(i);
  return r;
}

std::vector<int> Tree::inner_edges() const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (is_inner(i)) r.push_back(i);
  return r;
}

std::vector<int> Tree::vertices() const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (!leaf_[i]) r.push_back(i);
  return r;
}

bool Tree::is_linear() const {
  for (int i = 0; i < size(); ++i) {
    if (leaf_[i]) continue;
    if (kids_[i].size() != 1) return false;
  }
  return leaves().size() == 1;
}

bool Tree::below(int a, int b) const {
  for (int x = b; x != -1; x = parent_[x])
    if (x == a) return true;
  return false;
}

std::vector<int> Tree::dfs_order() const {
  std::vector<int> out;
  std::vector<int> st{root_};
  while (!st.empty()) {
    int e = st.back();
    st.pop_back();
    out.push_back(e);
    for (auto it = kids_[e].rbegin(); it != kids_[e].rend(); ++it) st.push_back(*it);
  }
  return out;
}

bool Tree::operator==(const Tree& o) const {
  if (size() != o.size() || planar_ != o.planar_) return false;
  for (int i = 0; i < size(); ++i) {
    int j = o.find(names_[i]);
    if (j < 0) return false;
    if (leaf_[i] != o.leaf_[j]) return false;
    int p = parent_[i], q = o.parent_[j];
    if ((p == -1) != (q == -1)) return false;
    if (p != -1 && names_[p] != o.names_[q]) return false;
    if (planar_) {
      if (kids_[i].size() != o.kids_[j].size()) return false;
      for (size_t k = 0; k < kids_[i].size(); ++k)
        if (names_[kids_[i][k]] != o.names_[o.kids_[j][k]]) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::string> edge_codes(const Tree& t, bool planar) {
  std::vector<std::string> code(t.size());
  auto order = t.dfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int e = *it;
    if (t.is_leaf(e)) {
      code[e] = "l";
      continue;
    }
    std::vector<std::string> cs;
    for (int c : t.inputs(e)) cs.push_back(code[c]);
    if (!planar) std::sort(cs.begin(), cs.end());
    std::string s = "(";
    for (auto& c : cs) s += c;
    s += ")";
    code[e] = std::move(s);
  }
  return code;
}

}  // namespace

std::string canonical_code(const Tree& t, bool planar) { return edge_codes(t, planar)[t.root()]; }

bool is_isomorphic(const Tree& a, const Tree& b, bool planar) {
  return canonical_code(a, planar) == canonical_code(b, planar);
}

StandardForm standard_form(const Tree& t, bool planar) {
  auto code = edge_codes(t, planar);
  std::vector<int> order;
  std::deque<int> q{t.root()};
  std::vector<std::vector<int>> sorted_kids(t.size());
  while (!q.empty()) {
    int e = q.front();
    q.pop_front();
    order.push_back(e);
    std::vector<int> ks = t.inputs(e);
    if (!planar)
      std::stable_sort(ks.begin(), ks.end(), [&](int x, int y) { return code[x] < code[y]; });
    sorted_kids[e] = ks;
    for (int c : ks) q.push_back(c);
  }
  std::vector<int> pos(t.size());
  for (int i = 0; i < t.size(); ++i) pos[order[i]] = i;
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(t.size());
  std::vector<char> leaf(t.size());
  for (int i = 0; i < t.size(); ++i) {
    names.push_back(std::to_string(i));
    int e = order[i];
    leaf[i] = t.is_leaf(e) ? 1 : 0;
    for (int c : sorted_kids[e]) kids[i].push_back(pos[c]);
  }
  return {Tree::from_kids(names, kids, leaf, planar), order};
}

Tree tree_from_code(const std::string& code, bool planar) {
  std::vector<std::vector<int>> kids;
  std::vector<char> leaf;
  size_t p = 0;
  std::function<int()> parse = [&]() -> int {
    if (p >= code.size()) throw TreeError(TreeError::Kind::Parse, "truncated tree code");
    int id = static_cast<int>(kids.size());
    kids.emplace_back();
    if (code[p] == 'l') {
      leaf.push_back(1);
      ++p;
      return id;
    }
    if (code[p] != '(') throw TreeError(TreeError::Kind::Parse, "bad tree code " + code);
    leaf.push_back(0);
    ++p;
    while (p < code.size() && code[p] != ')') {
      int c = parse();
      kids[id].push_back(c);
    }
    if (p >= code.size()) throw TreeError(TreeError::Kind::Parse, "unbalanced tree code " + code);
    ++p;
    return id;
  };
  parse();
  if (p != code.size()) throw TreeError(TreeError::Kind::Parse, "trailing characters in tree code " + code);
  std::vector<std::string> names;
  for (size_t i = 0; i < kids.size(); ++i) names.push_back(std::to_string(i));
  Tree raw = Tree::from_kids(names, kids, leaf, planar);
  return standard_form(raw, planar).tree;
}

Tree graft(const Tree& t, const Tree& s) {
  using K = TreeError::Kind;
  const std::string& r = s.name(s.root());
  int at = t.find(r);
  if (at < 0 || !t.is_leaf(at)) throw TreeError(K::RootNotLeafOfT, "root " + r + " of S is not a leaf of T");
  if (t.is_eta() && s.is_eta()) throw TreeError(K::EdgeClash, "grafting the unit tree on itself");
  for (int i = 0; i < s.size(); ++i)
    if (i != s.root() && t.find(s.name(i)) >= 0) throw TreeError(K::EdgeClash, "edge " + s.name(i) + " occurs in both trees");
  std::vector<std::string> names = t.names();
  std::vector<std::vector<int>> kids;
  std::vector<char> leaf;
  for (int i = 0; i < t.size(); ++i) {
    kids.push_back(t.inputs(i));
    leaf.push_back(t.is_leaf(i) ? 1 : 0);
  }
  std::vector<int> map(s.size());
  for (int i = 0; i < s.size(); ++i) {
    if (i == s.root()) {
      map[i] = at;
      continue;
    }
    map[i] = static_cast<int>(names.size());
    names.push_back(s.name(i));
    kids.emplace_back();
    leaf.push_back(0);
  }
  for (int i = 0; i < s.size(); ++i) {
    std::vector<int> ks;
    for (int c : s.inputs(i)) ks.push_back(map[c]);
    kids[map[i]] = ks;
    leaf[map[i]] = s.is_leaf(i) ? 1 : 0;
  }
  return Tree::from_kids(names, kids, leaf, t.planar() && s.planar());
}

Tree subtree_above(const Tree& t, int e) {
  std::vector<int> order;
  std::vector<int> st{e};
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    order.push_back(x);
    for (auto it = t.inputs(x).rbegin(); it != t.inputs(x).rend(); ++it) st.push_back(*it);
  }
  std::unordered_map<int, int> pos;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids;
  std::vector<char> leaf;
  for (int x : order) {
    names.push_back(t.name(x));
    std::vector<int> ks;
    for (int c : t.inputs(x)) ks.push_back(pos[c]);
    kids.push_back(ks);
    leaf.push_back(t.is_leaf(x) ? 1 : 0);
  }
  return Tree::from_kids(names, kids, leaf, t.planar());
}

RootDecomposition decompose_root(const Tree& t) {
  if (t.is_leaf(t.root())) throw TreeError(TreeError::Kind::NoVertex, "the unit tree has no vertex");
  int r = t.root();
  std::vector<std::string> names{t.name(r)};
  std::vector<std::vector<int>> kids{{}};
  std::vector<char> leaf{0};
  RootDecomposition d;
  for (int c : t.inputs(r)) {
    kids[0].push_back(static_cast<int>(names.size()));
    names.push_back(t.name(c));
    kids.emplace_back();
    leaf.push_back(1);
    d.subtrees.push_back(subtree_above(t, c));
  }
  d.corolla = Tree::from_kids(names, kids, leaf, t.planar());
  return d;
}

Tree regraft(const RootDecomposition& d) {
  Tree t = d.corolla;
  for (const auto& s : d.subtrees) {
    if (s.is_eta()) continue;
    t = graft(t, s);
  }
  return t;
}

namespace {

struct CodeGen {
  bool planar;
  bool reduced;
  std::map<std::pair<int, int>, std::vector<std::string>> memo;

  const std::vector<std::string>& get(int v, int e) {
    auto key = std::make_pair(v, e);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<std::string> out;
    if (v == 0) {
      if (e == 1) out.push_back("l");
    } else if (e >= 1) {
      std::vector<std::string> acc;
      extend(v - 1, e - 1, acc, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return memo[key] = out;
  }

  void extend(int vr, int er, std::vector<std::string>& acc, std::vector<std::string>& out) {
    if (vr == 0 && er == 0) {
      if (reduced && acc.size() < 2) return;
      std::string s = "(";
      for (auto& c : acc) s += c;
      s += ")";
      out.push_back(s);
      return;
    }
    if (er == 0) return;
    for (int vv = 0; vv <= vr; ++vv) {
      for (int ee = 1; ee <= er; ++ee) {
        if (ee < std::max(vv, 1)) continue;
        for (const auto& c : get(vv, ee)) {
          if (!planar && !acc.empty() && c < acc.back()) continue;
          acc.push_back(c);
          extend(vr - vv, er - ee, acc, out);
          acc.pop_back();
        }
      }
    }
  }
};

int count_char(const std::string& s, char ch) { return static_cast<int>(std::count(s.begin(), s.end(), ch)); }

}  // namespace

std::vector<Tree> enumerate_trees(const EnumOptions& opt) {
  int max_e = opt.max_edges;
  if (opt.leaves >= 0) {
    int bound = opt.max_vertices + opt.leaves;
    max_e = max_e < 0 ? bound : std::min(max_e, bound);
  }
  if (max_e < 0) max_e = 2 * opt.max_vertices + 1;
  CodeGen gen{opt.planar, opt.reduced, {}};
  std::vector<std::pair<std::pair<int, std::string>, std::string>> codes;
  for (int v = 0; v <= opt.max_vertices; ++v) {
    for (int e = 1; e <= max_e; ++e) {
      for (const auto& c : gen.get(v, e)) {
        if (opt.leaves >= 0 && count_char(c, 'l') != opt.leaves) continue;
        codes.push_back({{e, c}, c});
      }
    }
  }
  std::sort(codes.begin(), codes.end());
  std::vector<Tree> out;
  for (const auto& c : codes) out.push_back(tree_from_code(c.second, opt.planar));
  return out;
}

std::vector<Tree> enumerate_trees(int max_vertices, bool planar, bool reduced) {
  EnumOptions o;
  o.max_vertices = max_vertices;
  o.planar = planar;
  o.reduced = reduced;
  return enumerate_trees(o);
}

std::vector<std::vector<int>> automorphisms(const Tree& t) {
  auto code = edge_codes(t, false);
  std::vector<std::vector<int>> result;
  std::vector<int> perm(t.size(), -1);
  // pending pairs (source edge, image edge) whose children still need matching
  std::function<void(std::vector<std::pair<int, int>>)> go = [&](std::vector<std::pair<int, int>> pending) {
    if (pending.empty()) {
      result.push_back(perm);
      return;
    }
    auto [e, f] = pending.back();
    pending.pop_back();
    perm[e] = f;
    const auto& ke = t.inputs(e);
    const auto& kf = t.inputs(f);
    if (ke.empty()) {
      go(pending);
      return;
    }
    // match children of e to children of f with equal codes, in all ways
    std::vector<int> img(ke.size(), -1);
    std::vector<char> used(kf.size(), 0);
    std::function<void(size_t)> pick = [&](size_t i) {
      if (i == ke.size()) {
        auto next = pending;
        for (size_t k = 0; k < ke.size(); ++k) next.push_back({ke[k], img[k]});
        go(next);
        return;
      }
      for (size_t j = 0; j < kf.size(); ++j) {
        if (used[j] || code[kf[j]] != code[ke[i]]) continue;
        used[j] = 1;
        img[i] = kf[j];
        pick(i + 1);
        used[j] = 0;
      }
    };
    pick(0);
  };
  go({{t.root(), t.root()}});
  std::vector<int> id(t.size());
  std::iota(id.begin(), id.end(), 0);
  auto it = std::find(result.begin(), result.end(), id);
  if (it != result.end()) std::iter_swap(result.begin(), it);
  return result;
}

std::string to_dot(const Tree& t, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph \"" << graph_name << "\" {\n  rankdir=BT;\n  edge [dir=none];\n";
  for (int e = 0; e < t.size(); ++e) {
    if (t.is_leaf(e))
      os << "  top_" << e << " [shape=plaintext, label=\"\"];\n";
    else
      os << "  v_" << e << " [shape=plaintext, label=\"•\"];\n";
  }
  os << "  bottom [shape=plaintext, label=\"\"];\n";
  for (int e = 0; e < t.size(); ++e) {
    std::string upper = t.is_leaf(e) ? "top_" + std::to_string(e) : "v_" + std::to_string(e);
    std::string lower = e == t.root() ? "bottom" : "v_" + std::to_string(t.parent(e));
    os << "  " << lower << " -> " << upper << " [label=\"" << t.name(e) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace dendro
