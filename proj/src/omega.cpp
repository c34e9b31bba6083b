#include "dendro/omega.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace dendro {

bool spans_subtree(const Tree& t, int root, const std::vector<int>& leaves) {
  if (leaves.size() == 1 && leaves[0] == root) return true;
  std::vector<char> mark(t.size(), 0);
  for (int l : leaves) {
    if (l < 0 || l >= t.size() || mark[l]) return false;
    mark[l] = 1;
  }
  size_t hit = 0;
  std::vector<int> st{root};
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    if (mark[x]) {
      ++hit;
      continue;
    }
    if (t.is_leaf(x)) return false;
    for (int c : t.inputs(x)) st.push_back(c);
  }
  return hit == leaves.size();
}

bool is_morphism(const Tree& s, const Tree& t, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != s.size()) return false;
  for (int x : map)
    if (x < 0 || x >= t.size()) return false;
  for (int v : s.vertices()) {
    std::vector<int> img;
    for (int c : s.inputs(v)) img.push_back(map[c]);
    if (!spans_subtree(t, map[v], img)) return false;
  }
  return true;
}

OmegaMorphism compose(const OmegaMorphism& g, const OmegaMorphism& f) {
  if (!(*f.target == *g.source)) throw std::invalid_argument("morphisms are not composable");
  OmegaMorphism h{f.source, g.target, std::vector<int>(f.map.size())};
  for (size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

OmegaMorphism identity_morphism(const TreePtr& t) {
  OmegaMorphism m{t, t, std::vector<int>(t->size())};
  std::iota(m.map.begin(), m.map.end(), 0);
  return m;
}

namespace {

// All leaf sets of subtrees rooted at each edge.
std::vector<std::vector<std::vector<int>>> subtree_leafsets(const Tree& t) {
  std::vector<std::vector<std::vector<int>>> out(t.size());
  auto order = t.dfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    std::vector<std::vector<int>> sets{{x}};
    if (t.has_vertex(x)) {
      std::vector<std::vector<int>> acc{{}};
      for (int c : t.inputs(x)) {
        std::vector<std::vector<int>> next;
        for (const auto& a : acc)
          for (const auto& b : out[c]) {
            auto m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
          }
        acc = std::move(next);
      }
      for (auto& a : acc) sets.push_back(std::move(a));
    }
    out[x] = std::move(sets);
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> hom_maps(const Tree& s, const Tree& t) {
  auto sets = subtree_leafsets(t);
  std::vector<std::vector<std::vector<int>>> by_size_unused;
  std::vector<int> verts;
  for (int e : s.dfs_order())
    if (s.has_vertex(e)) verts.push_back(e);
  std::vector<std::vector<int>> out;
  std::vector<int> map(s.size(), -1);
  std::function<void(size_t)> go = [&](size_t k) {
    if (k == verts.size()) {
      out.push_back(map);
      return;
    }
    int v = verts[k];
    const auto& ins = s.inputs(v);
    for (const auto& L : sets[map[v]]) {
      if (L.size() != ins.size()) continue;
      std::vector<int> perm(L.size());
      std::iota(perm.begin(), perm.end(), 0);
      do {
        for (size_t i = 0; i < ins.size(); ++i) map[ins[i]] = L[perm[i]];
        go(k + 1);
      } while (std::next_permutation(perm.begin(), perm.end()));
      for (int c : ins) map[c] = -1;
    }
  };
  for (int r = 0; r < t.size(); ++r) {
    map[s.root()] = r;
    go(0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<OmegaMorphism> hom_set(const TreePtr& s, const TreePtr& t) {
  std::vector<OmegaMorphism> out;
  for (auto& m : hom_maps(*s, *t)) out.push_back({s, t, std::move(m)});
  return out;
}

Subface whole(const Tree& t) {
  Subface f;
  f.edges.resize(t.size());
  std::iota(f.edges.begin(), f.edges.end(), 0);
  f.leaves = t.leaves();
  return f;
}

Tree subface_tree(const Tree& t, const Subface& f, std::vector<int>* emb) {
  std::vector<char> in(t.size(), 0), lf(t.size(), 0);
  for (int e : f.edges) in[e] = 1;
  for (int e : f.leaves) lf[e] = 1;
  std::vector<int> order;
  for (int e : t.dfs_order())
    if (in[e]) order.push_back(e);
  std::vector<int> pos(t.size(), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
  int n = static_cast<int>(order.size());
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(n);
  std::vector<char> leaf(n, 0);
  int roots = 0;
  for (int i = 0; i < n; ++i) {
    int e = order[i];
    names.push_back(t.name(e));
    leaf[i] = lf[e];
    int p = t.parent(e);
    while (p != -1 && !in[p]) p = t.parent(p);
    if (p == -1)
      ++roots;
    else
      kids[pos[p]].push_back(i);
  }
  if (roots != 1) throw std::invalid_argument("not a face: edge set has no unique root");
  for (int i = 0; i < n; ++i)
    if (leaf[i] && !kids[i].empty()) throw std::invalid_argument("not a face: leaf has inputs");
  if (emb) *emb = order;
  return Tree::from_kids(names, kids, leaf, t.planar());
}

bool is_subface(const Tree& t, const Subface& f) {
  if (f.edges.empty()) return false;
  std::vector<char> in(t.size(), 0);
  for (int e : f.edges) in[e] = 1;
  for (int l : f.leaves)
    if (!in[l]) return false;
  int root = -1;
  for (int e : f.edges) {
    int p = t.parent(e);
    while (p != -1 && !in[p]) p = t.parent(p);
    if (p == -1) {
      if (root != -1) return false;
      root = e;
    }
  }
  if (!spans_subtree(t, root, f.leaves)) return false;
  // every kept edge must lie in the spanned subtree
  std::vector<char> sub(t.size(), 0), lf(t.size(), 0);
  for (int l : f.leaves) lf[l] = 1;
  std::vector<int> st{root};
  while (!st.empty()) {
    int x = st.back();
    st.pop_back();
    sub[x] = 1;
    if (lf[x]) continue;
    for (int c : t.inputs(x)) st.push_back(c);
  }
  for (int e : f.edges)
    if (!sub[e]) return false;
  return true;
}

Subface image_subface(const Tree& s, const Tree& t, const std::vector<int>& map) {
  (void)t;
  Subface f;
  for (int e = 0; e < s.size(); ++e) f.edges.push_back(map[e]);
  for (int l : s.leaves()) f.leaves.push_back(map[l]);
  std::sort(f.edges.begin(), f.edges.end());
  std::sort(f.leaves.begin(), f.leaves.end());
  return f;
}

const char* to_string(FaceKind k) {
  switch (k) {
    case FaceKind::Inner: return "inner";
    case FaceKind::Top: return "top";
    case FaceKind::Root: return "root";
    case FaceKind::EdgeInclusion: return "edge";
  }
  return "?";
}

std::string ElementaryFace::witness(const Tree& t) const { return std::string(to_string(kind)) + ":" + t.name(edge); }

std::vector<ElementaryFace> faces(const Tree& t) {
  std::vector<ElementaryFace> out;
  if (t.is_eta()) return out;
  auto all = whole(t);
  auto without = [&](const std::vector<int>& drop, const std::vector<int>& newleaves) {
    Subface f;
    for (int e : all.edges)
      if (std::find(drop.begin(), drop.end(), e) == drop.end()) f.edges.push_back(e);
    for (int e : all.leaves)
      if (std::find(drop.begin(), drop.end(), e) == drop.end()) f.leaves.push_back(e);
    for (int e : newleaves) f.leaves.push_back(e);
    std::sort(f.leaves.begin(), f.leaves.end());
    return f;
  };
  if (t.vertex_count() == 1) {
    for (int e = 0; e < t.size(); ++e) out.push_back({FaceKind::EdgeInclusion, e, Subface{{e}, {e}}});
    return out;
  }
  for (int e : t.inner_edges()) out.push_back({FaceKind::Inner, e, without({e}, {})});
  for (int v : t.vertices()) {
    if (v == t.root()) continue;
    bool top = true;
    for (int c : t.inputs(v))
      if (!t.is_leaf(c)) top = false;
    if (top) out.push_back({FaceKind::Top, v, without(t.inputs(v), {v})});
  }
  int r = t.root();
  int inner = 0;
  std::vector<int> drop{r};
  for (int c : t.inputs(r)) {
    if (t.is_leaf(c))
      drop.push_back(c);
    else
      ++inner;
  }
  if (inner == 1) out.push_back({FaceKind::Root, r, without(drop, {})});
  return out;
}

std::vector<DoubleFactorization> subfaces2(const Tree& t) {
  std::map<Subface, std::vector<std::pair<int, int>>> groups;
  auto fs = faces(t);
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    std::vector<int> emb;
    Tree f = subface_tree(t, fs[i].face, &emb);
    auto gs = faces(f);
    for (int j = 0; j < static_cast<int>(gs.size()); ++j) {
      Subface b;
      for (int e : gs[j].face.edges) b.edges.push_back(emb[e]);
      for (int e : gs[j].face.leaves) b.leaves.push_back(emb[e]);
      std::sort(b.edges.begin(), b.edges.end());
      std::sort(b.leaves.begin(), b.leaves.end());
      groups[b].push_back({i, j});
    }
  }
  std::vector<DoubleFactorization> out;
  for (auto& [b, w] : groups) out.push_back({b, w});
  return out;
}

std::vector<std::pair<int, int>> double_factorizations(const Tree& t, const Subface& beta) {
  for (auto& d : subfaces2(t))
    if (d.beta == beta) return d.ways;
  return {};
}

const char* to_string(MorphismKind k) {
  switch (k) {
    case MorphismKind::InnerFace: return "inner_face";
    case MorphismKind::OuterFace: return "outer_face";
    case MorphismKind::Degeneracy: return "degeneracy";
    case MorphismKind::Iso: return "iso";
    case MorphismKind::Composite: return "composite";
  }
  return "?";
}

namespace {

struct Collapse {
  std::vector<int> collapsed;  // vertices of S, output edges
  std::vector<char> removed;   // input edges of collapsed vertices
};

Collapse find_collapses(const Tree& s, const std::vector<int>& map) {
  Collapse c;
  c.removed.assign(s.size(), 0);
  for (int v : s.dfs_order()) {
    if (s.has_vertex(v) && s.arity(v) == 1 && map[v] == map[s.inputs(v)[0]]) {
      c.collapsed.push_back(v);
      c.removed[s.inputs(v)[0]] = 1;
    }
  }
  return c;
}

// S with the collapsed vertices removed; delta maps S edges to S' indices.
Tree collapse_tree(const Tree& s, const std::vector<char>& removed, std::vector<int>& delta) {
  std::vector<int> keep;
  for (int e : s.dfs_order())
    if (!removed[e]) keep.push_back(e);
  std::vector<int> pos(s.size(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) pos[keep[i]] = i;
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(keep.size());
  std::vector<char> leaf(keep.size(), 0);
  delta.assign(s.size(), -1);
  for (int i = 0; i < static_cast<int>(keep.size()); ++i) {
    int x = keep[i];
    names.push_back(s.name(x));
    int y = x;
    delta[y] = i;
    while (s.has_vertex(y) && s.arity(y) == 1 && removed[s.inputs(y)[0]]) {
      y = s.inputs(y)[0];
      delta[y] = i;
    }
    leaf[i] = s.is_leaf(y) ? 1 : 0;
    for (int c : s.inputs(y)) kids[i].push_back(pos[c]);
  }
  return Tree::from_kids(names, kids, leaf, s.planar());
}

}  // namespace

Classification classify(const Tree& s, const Tree& t, const std::vector<int>& map) {
  auto col = find_collapses(s, map);
  if (!col.collapsed.empty()) {
    if (col.collapsed.size() == 1) {
      std::vector<int> delta;
      Tree sp = collapse_tree(s, col.removed, delta);
      std::vector<int> m2(sp.size());
      for (int e = 0; e < s.size(); ++e) m2[delta[e]] = map[e];
      std::vector<int> sorted = m2;
      std::sort(sorted.begin(), sorted.end());
      bool bij = sp.size() == t.size() && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
      if (bij && sp.vertex_count() == t.vertex_count())
        return {MorphismKind::Degeneracy, s.name(col.collapsed[0])};
    }
    return {MorphismKind::Composite, ""};
  }
  if (s.size() == t.size() && s.vertex_count() == t.vertex_count()) return {MorphismKind::Iso, ""};
  auto img = image_subface(s, t, map);
  for (const auto& f : faces(t)) {
    if (!(f.face == img)) continue;
    if (f.kind == FaceKind::Inner) return {MorphismKind::InnerFace, t.name(f.edge)};
    return {MorphismKind::OuterFace, t.name(f.edge)};
  }
  return {MorphismKind::Composite, ""};
}

std::vector<int> Factorization::recompose(const Tree& s, const Tree& t) const {
  std::vector<int> out(s.size());
  for (int e = 0; e < s.size(); ++e) out[e] = t.find(face.name(pi[delta[e]]));
  return out;
}

Factorization factorize(const Tree& s, const Tree& t, const std::vector<int>& map, std::mt19937* rng) {
  Factorization fz;
  auto col = find_collapses(s, map);
  fz.collapsed = col.collapsed;
  if (rng) std::shuffle(fz.collapsed.begin(), fz.collapsed.end(), *rng);
  fz.s_prime = collapse_tree(s, col.removed, fz.delta);
  std::vector<int> m2(fz.s_prime.size());
  for (int e = 0; e < s.size(); ++e) m2[fz.delta[e]] = map[e];
  fz.image = image_subface(fz.s_prime, t, m2);
  std::vector<int> emb;
  fz.face = subface_tree(t, fz.image, &emb);
  std::vector<int> inv(t.size(), -1);
  for (int i = 0; i < static_cast<int>(emb.size()); ++i) inv[emb[i]] = i;
  fz.pi.resize(fz.s_prime.size());
  for (int e = 0; e < fz.s_prime.size(); ++e) fz.pi[e] = inv[m2[e]];

  // peel elementary faces off T until the face is reached
  Tree cur = t;
  auto target_in = [&](const Tree& g) {
    Subface f;
    for (int e : fz.image.edges) f.edges.push_back(g.find(t.name(e)));
    for (int e : fz.image.leaves) f.leaves.push_back(g.find(t.name(e)));
    for (int e : f.edges)
      if (e < 0) return std::optional<Subface>{};
    std::sort(f.edges.begin(), f.edges.end());
    std::sort(f.leaves.begin(), f.leaves.end());
    return std::optional<Subface>{f};
  };
  while (cur.size() != fz.face.size() || cur.vertex_count() != fz.face.vertex_count()) {
    auto fs = faces(cur);
    std::vector<int> ok;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
      Tree g = subface_tree(cur, fs[i].face);
      auto f = target_in(g);
      if (f && is_subface(g, *f)) ok.push_back(i);
    }
    if (ok.empty()) throw std::logic_error("factorization: no elementary face contains the image");
    int pick;
    if (rng) {
      pick = ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(*rng)];
    } else {
      // outer faces first, then inner, each by edge index
      std::stable_sort(ok.begin(), ok.end(), [&](int a, int b) {
        bool ia = fs[a].kind == FaceKind::Inner, ib = fs[b].kind == FaceKind::Inner;
        if (ia != ib) return !ia;
        return fs[a].edge < fs[b].edge;
      });
      pick = ok[0];
    }
    fz.chain.push_back({fs[pick], cur});
    cur = subface_tree(cur, fs[pick].face);
  }
  return fz;
}

std::vector<StdFace> std_faces(const Tree& t, bool planar) {
  std::vector<StdFace> out;
  for (const auto& f : faces(t)) {
    std::vector<int> emb;
    Tree ft = subface_tree(t, f.face, &emb);
    auto sf = standard_form(ft, planar);
    StdFace s{f, std::make_shared<const Tree>(sf.tree), {}};
    for (int i = 0; i < sf.tree.size(); ++i) s.map.push_back(emb[sf.iso[i]]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace dendro
