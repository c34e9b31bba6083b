#include "dendro/dsets.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dendro {

// ---- catalog ----

ShapeCatalog::ShapeCatalog(int max_vertices, int max_edges)
    : max_vertices_(max_vertices), max_edges_(max_edges < 0 ? 2 * max_vertices + 1 : max_edges) {
  EnumOptions opt;
  opt.max_vertices = max_vertices;
  opt.max_edges = max_edges_;
  for (const auto& t : enumerate_trees(opt)) {
    auto sf = standard_form(t, false);
    std::string code = canonical_code(sf.tree, false);
    if (by_code_.count(code)) continue;
    by_code_[code] = static_cast<int>(shapes_.size());
    codes_.push_back(code);
    shapes_.push_back(std::make_shared<const Tree>(std::move(sf.tree)));
  }
  faces_.resize(shapes_.size());
  squares_.resize(shapes_.size());
  autos_.resize(shapes_.size());
}

int ShapeCatalog::find(const Tree& t) const { return find_code(canonical_code(t, false)); }

int ShapeCatalog::find_code(const std::string& code) const {
  auto it = by_code_.find(code);
  return it == by_code_.end() ? -1 : it->second;
}

const std::vector<ShapeCatalog::Face>& ShapeCatalog::faces(int s) const {
  if (!faces_[s]) {
    auto out = std::make_unique<std::vector<Face>>();
    for (auto& f : std_faces(*shapes_[s], false)) {
      int idx = find(*f.source);
      if (idx < 0 || *shapes_[idx] != *f.source) throw std::logic_error("face shape missing from catalog");
      out->push_back({f.face, idx, f.map});
    }
    faces_[s] = std::move(out);
  }
  return *faces_[s];
}

const std::vector<ShapeCatalog::Square>& ShapeCatalog::squares(int s) const {
  if (!squares_[s]) {
    auto out = std::make_unique<std::vector<Square>>();
    const Tree& t = *shapes_[s];
    const auto& fs = faces(s);
    for (const auto& d : subfaces2(t)) {
      std::vector<int> emb;
      Tree bt = subface_tree(t, d.beta, &emb);
      auto sf = standard_form(bt, false);
      Square sq{find(sf.tree), {}};
      std::vector<int> mb;
      for (int i = 0; i < sf.tree.size(); ++i) mb.push_back(emb[sf.iso[i]]);
      for (const auto& w : d.ways) {
        const auto& fm = fs[w.first].map;
        std::vector<int> m;
        for (int e : mb) m.push_back(static_cast<int>(std::find(fm.begin(), fm.end(), e) - fm.begin()));
        sq.ways.push_back({w.first, m});
      }
      out->push_back(std::move(sq));
    }
    squares_[s] = std::move(out);
  }
  return *squares_[s];
}

const std::vector<std::vector<int>>& ShapeCatalog::automorphisms(int s) const {
  if (!autos_[s]) autos_[s] = std::make_unique<std::vector<std::vector<int>>>(dendro::automorphisms(*shapes_[s]));
  return *autos_[s];
}

std::string ShapeCatalog::bound_label() const {
  return "vertices<=" + std::to_string(max_vertices_) + ",edges<=" + std::to_string(max_edges_);
}

// ---- dendroidal sets ----

size_t DendrexHash::operator()(const Dendrex& d) const {
  size_t h = d.size();
  for (int v : d) h = h * 1000003u + static_cast<size_t>(v + 1);
  return h;
}

DendroidalSet::DendroidalSet(CatalogPtr catalog, Restrict restrict, std::string name)
    : catalog_(std::move(catalog)), restrict_(std::move(restrict)), name_(std::move(name)) {
  dendrices_.resize(catalog_->size());
  index_.resize(catalog_->size());
}

long DendroidalSet::total() const {
  long n = 0;
  for (const auto& d : dendrices_) n += static_cast<long>(d.size());
  return n;
}

int DendroidalSet::find(int shape, const Dendrex& d) const {
  auto it = index_[shape].find(d);
  return it == index_[shape].end() ? -1 : it->second;
}

int DendroidalSet::add(int shape, Dendrex d) {
  auto it = index_[shape].find(d);
  if (it != index_[shape].end()) return it->second;
  int id = count(shape);
  index_[shape].emplace(d, id);
  dendrices_[shape].push_back(std::move(d));
  return id;
}

void DendroidalSet::remove(int shape, std::vector<int> xs) {
  std::sort(xs.begin(), xs.end());
  std::vector<Dendrex> keep;
  for (int i = 0; i < count(shape); ++i)
    if (!std::binary_search(xs.begin(), xs.end(), i)) keep.push_back(dendrices_[shape][i]);
  dendrices_[shape].clear();
  index_[shape].clear();
  for (auto& d : keep) add(shape, std::move(d));
}

int DendroidalSet::act(int r, int t, const std::vector<int>& map, int x) const {
  return find(r, restrict_(r, t, map, dendrices_[t][x]));
}

PresheafCheck validate_presheaf(const DendroidalSet& x, int max_target_vertices) {
  PresheafCheck res;
  const auto& c = x.catalog();
  int n = c.size();
  std::vector<std::vector<std::vector<std::vector<int>>>> homs(n, std::vector<std::vector<std::vector<int>>>(n));
  for (int r = 0; r < n; ++r)
    for (int t = 0; t < n; ++t) homs[r][t] = hom_maps(c.shape(r), c.shape(t));
  auto fail = [&](const std::string& m) {
    res.ok = false;
    res.failure = m;
    return res;
  };
  for (int t = 0; t < n; ++t) {
    if (max_target_vertices >= 0 && c.shape(t).vertex_count() > max_target_vertices) continue;
    std::vector<int> id(c.shape(t).size());
    std::iota(id.begin(), id.end(), 0);
    for (int xi = 0; xi < x.count(t); ++xi)
      if (x.act(t, t, id, xi) != xi) return fail("identity does not act trivially on " + c.code(t));
    for (int r = 0; r < n; ++r)
      for (const auto& f : homs[r][t]) {
        std::vector<int> fr(x.count(t));
        for (int xi = 0; xi < x.count(t); ++xi) {
          fr[xi] = x.act(r, t, f, xi);
          ++res.checked;
          if (fr[xi] < 0) return fail("restriction leaves the set at " + c.code(r) + " -> " + c.code(t));
        }
        for (int q = 0; q < n; ++q)
          for (const auto& g : homs[q][r]) {
            std::vector<int> fg;
            for (int e : g) fg.push_back(f[e]);
            for (int xi = 0; xi < x.count(t); ++xi) {
              ++res.checked;
              if (x.act(q, t, fg, xi) != x.act(q, r, g, fr[xi]))
                return fail("action does not respect composition at " + c.code(q) + " -> " + c.code(r) + " -> " +
                            c.code(t));
            }
          }
      }
  }
  return res;
}

DendroidalSet empty_dset(const CatalogPtr& c) {
  return DendroidalSet(c, [](int, int, const std::vector<int>&, const Dendrex& x) { return x; }, "empty");
}

DendroidalSet representable(const Tree& t, const CatalogPtr& c) {
  DendroidalSet x(
      c,
      [](int, int, const std::vector<int>& map, const Dendrex& d) {
        Dendrex out;
        for (int e : map) out.push_back(d[e]);
        return out;
      },
      "Omega[" + canonical_code(t, false) + "]");
  for (int r = 0; r < c->size(); ++r)
    for (auto& m : hom_maps(c->shape(r), t)) x.add(r, std::move(m));
  return x;
}

namespace {

// operation of P assigned to the subtree of t between root and the ordered leaves
int evaluate_subtree(const TabulatedOperad& p, const Tree& t, const Dendrex& x, int root, const std::vector<int>& leaves) {
  int n = t.size();
  if (leaves.size() == 1 && leaves[0] == root) return p.identity(x[root]);
  std::vector<char> is_leaf(n, 0);
  for (int l : leaves) is_leaf[l] = 1;
  std::vector<int> visited;
  std::function<int(int)> eval = [&](int e) -> int {
    if (is_leaf[e]) {
      visited.push_back(e);
      return p.identity(x[e]);
    }
    if (!t.has_vertex(e)) throw std::logic_error("edge map does not span a subtree");
    std::vector<int> gs;
    for (int c : t.inputs(e)) gs.push_back(eval(c));
    int h = p.compose_full(x[n + e], gs);
    if (h < 0) throw OperadError(OperadError::Kind::BoundExceeded, "composite above the arity bound of " + p.name);
    return h;
  };
  int h = eval(root);
  Perm sigma(leaves.size());
  for (size_t k = 0; k < leaves.size(); ++k)
    sigma[k] = static_cast<int>(std::find(visited.begin(), visited.end(), leaves[k]) - visited.begin());
  return p.act(h, sigma);
}

}  // namespace

DendroidalSet nerve(const OperadPtr& pp, const CatalogPtr& c) {
  const TabulatedOperad& p = *pp;
  if (p.planar()) throw OperadError(OperadError::Kind::Invalid, "the nerve needs a symmetric operad");
  if (!p.empty_above_bound() && p.arity_bound() < c->max_arity())
    throw OperadError(OperadError::Kind::BoundExceeded, "operad tabulated below the arities of the shapes");
  std::shared_ptr<const ShapeCatalog> cat = c;
  DendroidalSet x(
      c,
      [pp, cat](int r, int t, const std::vector<int>& map, const Dendrex& d) {
        const Tree& rs = cat->shape(r);
        const Tree& ts = cat->shape(t);
        int n = rs.size();
        Dendrex out(2 * n, -1);
        for (int k = 0; k < n; ++k) out[k] = d[map[k]];
        for (int v = 0; v < n; ++v) {
          if (!rs.has_vertex(v)) continue;
          std::vector<int> leaves;
          for (int in : rs.inputs(v)) leaves.push_back(map[in]);
          out[n + v] = evaluate_subtree(*pp, ts, d, map[v], leaves);
        }
        return out;
      },
      "N(" + p.name + ")");
  std::map<std::pair<int, int>, std::vector<int>> by_cod_arity;
  for (int f = 0; f < p.size(); ++f) by_cod_arity[{p.op(f).cod, p.arity(f)}].push_back(f);
  for (int s = 0; s < c->size(); ++s) {
    const Tree& t = c->shape(s);
    int n = t.size();
    std::vector<int> order;
    for (int e : t.dfs_order())
      if (t.has_vertex(e)) order.push_back(e);
    Dendrex d(2 * n, -1);
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == order.size()) {
        x.add(s, d);
        return;
      }
      int v = order[k];
      auto it = by_cod_arity.find({d[v], t.arity(v)});
      if (it == by_cod_arity.end()) return;
      for (int f : it->second) {
        d[n + v] = f;
        const auto& in = t.inputs(v);
        for (size_t i = 0; i < in.size(); ++i) d[in[i]] = p.op(f).dom[i];
        rec(k + 1);
      }
      d[n + v] = -1;
    };
    for (int col = 0; col < p.color_count(); ++col) {
      d[t.root()] = col;
      rec(0);
    }
  }
  return x;
}

OperadFunctor nerve_dendrex_functor(const OperadPtr& p, const Tree& t, const Dendrex& x) {
  auto o = std::make_shared<const TabulatedOperad>(free_operad_on_tree(t));
  OperadFunctor f{o, p, std::vector<int>(x.begin(), x.begin() + t.size()), {}};
  // operations of Omega(T) are labeled root(leaf,...)
  for (int k = 0; k < o->size(); ++k) {
    const auto& op = o->op(k);
    f.op_map.push_back(evaluate_subtree(*p, t, x, op.cod, op.dom));
  }
  return f;
}

// ---- maps ----

bool validate_map(const DSetMap& f, std::string* failure) {
  const auto& c = f.source->catalog();
  auto bad = [&](const std::string& m) {
    if (failure) *failure = m;
    return false;
  };
  if (static_cast<int>(f.map.size()) != c.size()) return bad("map has the wrong number of shapes");
  for (int t = 0; t < c.size(); ++t) {
    if (static_cast<int>(f.map[t].size()) != f.source->count(t)) return bad("map has the wrong size at " + c.code(t));
    for (int y : f.map[t])
      if (y < 0 || y >= f.target->count(t)) return bad("map leaves the target at " + c.code(t));
  }
  for (int t = 0; t < c.size(); ++t)
    for (int r = 0; r < c.size(); ++r)
      for (const auto& m : hom_maps(c.shape(r), c.shape(t)))
        for (int z = 0; z < f.source->count(t); ++z)
          if (f.target->act(r, t, m, f.map[t][z]) != f.map[r][f.source->act(r, t, m, z)])
            return bad("not natural at " + c.code(r) + " -> " + c.code(t));
  return true;
}

std::vector<DSetMap> yoneda_maps(const DendroidalSet& rep, const Tree& t, const DendroidalSet& x) {
  const auto& c = x.catalog();
  int ts = c.find(t);
  if (ts < 0 || c.shape(ts) != t) throw std::invalid_argument("the tree must be a stored standard shape");
  std::vector<DSetMap> out;
  for (int y = 0; y < x.count(ts); ++y) {
    DSetMap f{&rep, &x, std::vector<std::vector<int>>(c.size())};
    for (int r = 0; r < c.size(); ++r)
      for (int k = 0; k < rep.count(r); ++k) f.map[r].push_back(x.act(r, ts, rep.dendrex(r, k), y));
    out.push_back(std::move(f));
  }
  return out;
}

DSetMap empty_map(const DendroidalSet& empty, const DendroidalSet& x) {
  return DSetMap{&empty, &x, std::vector<std::vector<int>>(x.catalog().size())};
}

// ---- horns ----

namespace {

struct FamilySearch {
  const DendroidalSet& x;
  int shape;
  int omitted;
  std::vector<int> order;  // retained faces
  // per retained position: squares linking it to earlier positions
  struct Link {
    int square;
    int self_way;
    int other_pos;
    int other_way;
  };
  std::vector<std::vector<Link>> links;
  std::vector<std::unordered_map<Dendrex, std::vector<int>, DendrexHash>> candidates;
  std::map<std::pair<int, int>, std::vector<int>> restr;  // (square, face) -> per dendrex

  FamilySearch(const DendroidalSet& xs, int s, int om) : x(xs), shape(s), omitted(om) {
    const auto& c = x.catalog();
    const auto& fs = c.faces(s);
    const auto& sq = c.squares(s);
    std::vector<int> pos(fs.size(), -1);
    for (int a = 0; a < static_cast<int>(fs.size()); ++a)
      if (a != om) {
        pos[a] = static_cast<int>(order.size());
        order.push_back(a);
      }
    links.resize(order.size());
    for (int q = 0; q < static_cast<int>(sq.size()); ++q) {
      const auto& w = sq[q].ways;
      if (w.size() != 2) throw std::logic_error("codimension 2 face without exactly two factorizations");
      int a0 = w[0].first, a1 = w[1].first;
      if (a0 == om || a1 == om) continue;
      for (int k = 0; k < 2; ++k) {
        int a = w[k].first;
        const auto& m = w[k].second;
        int fshape = fs[a].shape;
        std::vector<int> r(x.count(fshape));
        for (int z = 0; z < x.count(fshape); ++z) r[z] = x.act(sq[q].shape, fshape, m, z);
        restr[{q, k}] = std::move(r);
      }
      int p0 = pos[a0], p1 = pos[a1];
      if (p0 > p1)
        links[p0].push_back({q, 0, p1, 1});
      else
        links[p1].push_back({q, 1, p0, 0});
    }
    candidates.resize(order.size());
    for (size_t p = 0; p < order.size(); ++p) {
      int fshape = fs[order[p]].shape;
      for (int z = 0; z < x.count(fshape); ++z) {
        Dendrex key;
        for (const auto& l : links[p]) key.push_back(restr[{l.square, l.self_way}][z]);
        candidates[p][key].push_back(z);
      }
    }
  }

  // returns false when stopped by the callback
  bool run(const std::function<bool(const std::vector<int>&)>& cb) {
    std::vector<int> chosen(order.size(), -1);
    std::function<bool(size_t)> rec = [&](size_t p) -> bool {
      if (p == order.size()) return cb(chosen);
      Dendrex key;
      for (const auto& l : links[p]) key.push_back(restr[{l.square, l.other_way}][chosen[l.other_pos]]);
      auto it = candidates[p].find(key);
      if (it == candidates[p].end()) return true;
      for (int z : it->second) {
        chosen[p] = z;
        if (!rec(p + 1)) return false;
      }
      return true;
    };
    return rec(0);
  }

  MatchingFamily family(const std::vector<int>& chosen) const {
    MatchingFamily f{shape, omitted, std::vector<int>(x.catalog().faces(shape).size(), -1)};
    for (size_t p = 0; p < order.size(); ++p) f.dendrices[order[p]] = chosen[p];
    return f;
  }
};

std::vector<MatchingFamily> families(const DendroidalSet& x, int shape, int omitted, long limit) {
  FamilySearch s(x, shape, omitted);
  std::vector<MatchingFamily> out;
  s.run([&](const std::vector<int>& ch) {
    out.push_back(s.family(ch));
    return limit < 0 || static_cast<long>(out.size()) < limit;
  });
  return out;
}

Dendrex horn_signature(const DendroidalSet& x, int shape, int omitted, int z) {
  const auto& fs = x.catalog().faces(shape);
  Dendrex sig;
  for (int a = 0; a < static_cast<int>(fs.size()); ++a)
    if (a != omitted) sig.push_back(x.act(fs[a].shape, shape, fs[a].map, z));
  return sig;
}

}  // namespace

std::vector<MatchingFamily> boundary_families(const DendroidalSet& x, int shape, long limit) {
  return families(x, shape, -1, limit);
}

std::vector<MatchingFamily> horn_families(const DendroidalSet& x, int shape, int omitted, long limit) {
  return families(x, shape, omitted, limit);
}

bool is_matching(const DendroidalSet& x, const MatchingFamily& f) {
  const auto& c = x.catalog();
  const auto& fs = c.faces(f.shape);
  for (const auto& sq : c.squares(f.shape)) {
    int a0 = sq.ways[0].first, a1 = sq.ways[1].first;
    if (a0 == f.omitted || a1 == f.omitted) continue;
    int r0 = x.act(sq.shape, fs[a0].shape, sq.ways[0].second, f.dendrices[a0]);
    int r1 = x.act(sq.shape, fs[a1].shape, sq.ways[1].second, f.dendrices[a1]);
    if (r0 != r1 || r0 < 0) return false;
  }
  return true;
}

MatchingFamily restriction_family(const DendroidalSet& x, int shape, int omitted, int dendrex) {
  const auto& fs = x.catalog().faces(shape);
  MatchingFamily f{shape, omitted, std::vector<int>(fs.size(), -1)};
  for (int a = 0; a < static_cast<int>(fs.size()); ++a)
    if (a != omitted) f.dendrices[a] = x.act(fs[a].shape, shape, fs[a].map, dendrex);
  return f;
}

std::vector<int> fill_horn(const DendroidalSet& x, const MatchingFamily& f) {
  std::vector<int> out;
  for (int z = 0; z < x.count(f.shape); ++z)
    if (restriction_family(x, f.shape, f.omitted, z).dendrices == f.dendrices) out.push_back(z);
  return out;
}

KanReport inner_kan_report(const DendroidalSet& x, bool strict) {
  KanReport rep;
  const auto& c = x.catalog();
  rep.within_bound = c.bound_label();
  for (int s = 0; s < c.size() && rep.holds; ++s) {
    const auto& fs = c.faces(s);
    for (int a = 0; a < static_cast<int>(fs.size()) && rep.holds; ++a) {
      if (fs[a].face.kind != FaceKind::Inner) continue;
      std::unordered_map<Dendrex, int, DendrexHash> fillers;
      for (int z = 0; z < x.count(s); ++z) ++fillers[horn_signature(x, s, a, z)];
      FamilySearch search(x, s, a);
      search.run([&](const std::vector<int>& ch) {
        ++rep.horns;
        Dendrex sig;
        for (size_t p = 0; p < search.order.size(); ++p) sig.push_back(ch[p]);
        auto it = fillers.find(sig);
        int n = it == fillers.end() ? 0 : it->second;
        rep.fillers += n;
        if (n == 0 || (strict && n != 1)) {
          rep.holds = false;
          std::string ids;
          for (int v : ch) ids += (ids.empty() ? "" : ",") + std::to_string(v);
          rep.witness = "shape " + c.code(s) + " inner edge " + c.shape(s).name(fs[a].face.edge) + " family [" + ids +
                        "] has " + std::to_string(n) + " fillers";
          return false;
        }
        return true;
      });
    }
  }
  return rep;
}

bool is_inner_kan(const DendroidalSet& x) { return inner_kan_report(x, false).holds; }
bool is_strict(const DendroidalSet& x) { return inner_kan_report(x, true).holds; }

DendroidalSet delete_dendrex(const DendroidalSet& x, int shape, int dendrex) {
  DendroidalSet out = x;
  out.remove(shape, {dendrex});
  return out;
}

DendroidalSet delete_closure(const DendroidalSet& x, int shape, int dendrex) {
  const auto& c = x.catalog();
  DendroidalSet out = x;
  for (int q = 0; q < c.size(); ++q) {
    std::vector<int> doomed;
    auto maps = hom_maps(c.shape(shape), c.shape(q));
    for (int y = 0; y < x.count(q); ++y)
      for (const auto& m : maps)
        if (x.act(shape, q, m, y) == dendrex) {
          doomed.push_back(y);
          break;
        }
    out.remove(q, doomed);
  }
  return out;
}

DeletionReport top_shape_deletions(const DendroidalSet& x) {
  DeletionReport rep;
  const auto& c = x.catalog();
  for (int s = 0; s < c.size(); ++s) {
    if (c.shape(s).vertex_count() != c.max_vertices()) continue;
    const auto& fs = c.faces(s);
    std::vector<int> inner;
    for (int a = 0; a < static_cast<int>(fs.size()); ++a)
      if (fs[a].face.kind == FaceKind::Inner) inner.push_back(a);
    std::vector<std::unordered_map<Dendrex, int, DendrexHash>> groups(inner.size());
    for (size_t k = 0; k < inner.size(); ++k)
      for (int z = 0; z < x.count(s); ++z) ++groups[k][horn_signature(x, s, inner[k], z)];
    for (int z = 0; z < x.count(s); ++z) {
      ++rep.deletions;
      bool broken = false;
      // the horn of z stays matching since its faces are untouched
      for (size_t k = 0; k < inner.size() && !broken; ++k)
        if (groups[k][horn_signature(x, s, inner[k], z)] == 1) broken = true;
      if (broken)
        ++rep.broken;
      else if (rep.first_survivor.empty())
        rep.first_survivor = c.code(s) + "#" + std::to_string(z);
    }
  }
  return rep;
}

// ---- normality ----

bool is_normal(const DendroidalSet& x, std::string* witness) {
  const auto& c = x.catalog();
  for (int s = 0; s < c.size(); ++s)
    for (const auto& a : c.automorphisms(s)) {
      bool ident = true;
      for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (a[i] != i) ident = false;
      if (ident) continue;
      for (int z = 0; z < x.count(s); ++z)
        if (x.act(s, s, a, z) == z) {
          if (witness) *witness = "shape " + c.code(s) + " dendrex " + std::to_string(z) + " is fixed by a non-trivial automorphism";
          return false;
        }
    }
  return true;
}

bool is_normal_mono(const DSetMap& f, std::string* witness) {
  const auto& c = f.target->catalog();
  for (int s = 0; s < c.size(); ++s) {
    std::vector<int> img = f.map[s];
    std::sort(img.begin(), img.end());
    if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
      if (witness) *witness = "not injective at " + c.code(s);
      return false;
    }
    for (const auto& a : c.automorphisms(s)) {
      bool ident = true;
      for (int i = 0; i < static_cast<int>(a.size()); ++i)
        if (a[i] != i) ident = false;
      if (ident) continue;
      for (int z = 0; z < f.target->count(s); ++z) {
        if (std::binary_search(img.begin(), img.end(), z)) continue;
        if (f.target->act(s, s, a, z) == z) {
          if (witness) *witness = "shape " + c.code(s) + " dendrex " + std::to_string(z) + " outside the image has a stabilizer";
          return false;
        }
      }
    }
  }
  return true;
}

// ---- simplicial sets ----

bool validate_simplicial(const FiniteSimplicialSet& s, std::string* failure) {
  auto bad = [&](const std::string& m) {
    if (failure) *failure = m;
    return false;
  };
  int top = s.dimension();
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int y = 0; y < s.count[n]; ++y)
          if (n >= 2 && s.face[n - 1][i][s.face[n][j][y]] != s.face[n - 1][j - 1][s.face[n][i][y]])
            return bad("face identity fails in dimension " + std::to_string(n));
  for (int n = 0; n < top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int y = 0; y < s.count[n]; ++y) {
        int z = s.degen[n][j][y];
        for (int i = 0; i <= n + 1; ++i) {
          int d = s.face[n + 1][i][z];
          int expect;
          if (i == j || i == j + 1)
            expect = y;
          else if (i < j)
            expect = s.degen[n - 1][j - 1][s.face[n][i][y]];
          else
            expect = s.degen[n - 1][j][s.face[n][i - 1][y]];
          if (d != expect) return bad("degeneracy identity fails in dimension " + std::to_string(n));
        }
      }
  return true;
}

int simplicial_act(const FiniteSimplicialSet& s, const std::vector<int>& theta, int n, int y) {
  int m = static_cast<int>(theta.size()) - 1;
  std::vector<int> th = theta;
  // missing values: theta = d^i o theta'
  for (int i = n; i >= 0; --i) {
    if (std::find(th.begin(), th.end(), i) != th.end()) continue;
    y = s.face[n][i][y];
    for (int& v : th)
      if (v > i) --v;
    --n;
  }
  // now surjective onto [n]; collapse repeated values: theta = theta'' o s^j
  std::vector<int> degs;
  std::vector<int> cur = th;
  while (static_cast<int>(cur.size()) - 1 > n) {
    int j = 0;
    while (cur[j] != cur[j + 1]) ++j;
    degs.push_back(j);
    cur.erase(cur.begin() + j + 1);
  }
  // theta = id o s^{j_k} ... s^{j_1} read back: apply s_{j} in reverse order of removal
  for (auto it = degs.rbegin(); it != degs.rend(); ++it) {
    y = s.degen[n][*it][y];
    ++n;
  }
  (void)m;
  return y;
}

std::vector<int> linear_to_delta(const std::vector<int>& map, int m, int n) {
  std::vector<int> theta(m + 1);
  for (int k = 0; k <= m; ++k) theta[k] = n - map[m - k];
  return theta;
}

FiniteSimplicialSet standard_simplex(int n, int dim) {
  // simplices: monotone sequences in [n] of length k+1
  FiniteSimplicialSet s;
  std::vector<std::vector<std::vector<int>>> seqs(dim + 1);
  std::vector<std::map<std::vector<int>, int>> idx(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    std::vector<int> cur(k + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == k + 1) {
        idx[k][cur] = static_cast<int>(seqs[k].size());
        seqs[k].push_back(cur);
        return;
      }
      for (int v = lo; v <= n; ++v) {
        cur[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
    s.count.push_back(static_cast<int>(seqs[k].size()));
  }
  s.face.resize(dim + 1);
  s.degen.resize(dim + 1);
  for (int k = 1; k <= dim; ++k) {
    s.face[k].assign(k + 1, std::vector<int>(s.count[k]));
    for (int i = 0; i <= k; ++i)
      for (int y = 0; y < s.count[k]; ++y) {
        auto q = seqs[k][y];
        q.erase(q.begin() + i);
        s.face[k][i][y] = idx[k - 1].at(q);
      }
  }
  for (int k = 0; k < dim; ++k) {
    s.degen[k].assign(k + 1, std::vector<int>(s.count[k]));
    for (int j = 0; j <= k; ++j)
      for (int y = 0; y < s.count[k]; ++y) {
        auto q = seqs[k][y];
        q.insert(q.begin() + j, q[j]);
        s.degen[k][j][y] = idx[k + 1].at(q);
      }
  }
  return s;
}

FiniteSimplicialSet category_nerve(const FiniteCategory& c, int dim, std::vector<std::vector<std::vector<int>>>* chains_out) {
  FiniteSimplicialSet s;
  std::vector<std::vector<std::vector<int>>> chains(dim + 1);
  std::vector<std::map<std::vector<int>, int>> idx(dim + 1);
  int na = static_cast<int>(c.arrows.size());
  for (int o = 0; o < static_cast<int>(c.objects.size()); ++o) {
    idx[0][{o}] = static_cast<int>(chains[0].size());
    chains[0].push_back({o});
  }
  for (int k = 1; k <= dim; ++k)
    for (const auto& ch : chains[k - 1])
      for (int f = 0; f < na; ++f) {
        int end = k == 1 ? ch[0] : c.arrows[ch.back()].tgt;
        if (c.arrows[f].src != end) continue;
        std::vector<int> nc = k == 1 ? std::vector<int>{} : ch;
        nc.push_back(f);
        idx[k][nc] = static_cast<int>(chains[k].size());
        chains[k].push_back(nc);
      }
  for (int k = 0; k <= dim; ++k) s.count.push_back(static_cast<int>(chains[k].size()));
  s.face.resize(dim + 1);
  s.degen.resize(dim + 1);
  for (int k = 1; k <= dim; ++k) {
    s.face[k].assign(k + 1, std::vector<int>(s.count[k]));
    for (int y = 0; y < s.count[k]; ++y) {
      const auto& ch = chains[k][y];
      for (int i = 0; i <= k; ++i) {
        std::vector<int> q;
        if (k == 1) {
          q = {i == 0 ? c.arrows[ch[0]].tgt : c.arrows[ch[0]].src};
        } else if (i == 0) {
          q.assign(ch.begin() + 1, ch.end());
        } else if (i == k) {
          q.assign(ch.begin(), ch.end() - 1);
        } else {
          q = ch;
          q[i - 1] = c.comp[ch[i]][ch[i - 1]];
          q.erase(q.begin() + i);
        }
        s.face[k][i][y] = idx[k - 1].at(q);
      }
    }
  }
  for (int k = 0; k < dim; ++k) {
    s.degen[k].assign(k + 1, std::vector<int>(s.count[k]));
    for (int y = 0; y < s.count[k]; ++y) {
      const auto& ch = chains[k][y];
      for (int j = 0; j <= k; ++j) {
        std::vector<int> q;
        if (k == 0) {
          q = {c.identity[ch[0]]};
        } else {
          int obj = j == 0 ? c.arrows[ch[0]].src : c.arrows[ch[j - 1]].tgt;
          q = ch;
          q.insert(q.begin() + j, c.identity[obj]);
        }
        s.degen[k][j][y] = idx[k + 1].at(q);
      }
    }
  }
  if (chains_out) *chains_out = chains;
  return s;
}

bool simplicial_inner_kan(const FiniteSimplicialSet& s) {
  int top = s.dimension();
  for (int n = 2; n <= top; ++n)
    for (int k = 1; k < n; ++k) {
      // families (y_0..y_n without y_k) with d_i y_j = d_{j-1} y_i for i < j
      std::set<std::vector<int>> fillable;
      for (int y = 0; y < s.count[n]; ++y) {
        std::vector<int> f;
        for (int i = 0; i <= n; ++i)
          if (i != k) f.push_back(s.face[n][i][y]);
        fillable.insert(f);
      }
      std::vector<int> fam(n + 1, -1);
      std::function<bool(int)> rec = [&](int j) -> bool {
        if (j > n) {
          std::vector<int> f;
          for (int i = 0; i <= n; ++i)
            if (i != k) f.push_back(fam[i]);
          return fillable.count(f) > 0;
        }
        if (j == k) return rec(j + 1);
        for (int y = 0; y < s.count[n - 1]; ++y) {
          bool ok = true;
          for (int i = 0; i < j && ok; ++i) {
            if (i == k) continue;
            if (n - 1 >= 1 && s.face[n - 1][i][y] != s.face[n - 1][j - 1][fam[i]]) ok = false;
          }
          if (!ok) continue;
          fam[j] = y;
          if (!rec(j + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return false;
    }
  return true;
}

DendroidalSet i_lower(const FiniteSimplicialSet& s, const CatalogPtr& c) {
  auto sp = std::make_shared<FiniteSimplicialSet>(s);
  std::shared_ptr<const ShapeCatalog> cat = c;
  DendroidalSet x(
      c,
      [sp, cat](int r, int t, const std::vector<int>& map, const Dendrex& d) {
        int m = cat->shape(r).size() - 1, n = cat->shape(t).size() - 1;
        return Dendrex{simplicial_act(*sp, linear_to_delta(map, m, n), n, d[0])};
      },
      "i_lower");
  for (int n = 0; n <= s.dimension(); ++n) {
    int shape = c->linear(n);
    if (shape < 0) continue;
    for (int y = 0; y < s.count[n]; ++y) x.add(shape, {y});
  }
  return x;
}

FiniteSimplicialSet i_upper(const DendroidalSet& x) {
  const auto& c = x.catalog();
  FiniteSimplicialSet s;
  int top = 0;
  while (c.linear(top + 1) >= 0) ++top;
  for (int n = 0; n <= top; ++n) s.count.push_back(x.count(c.linear(n)));
  s.face.resize(top + 1);
  s.degen.resize(top + 1);
  for (int n = 1; n <= top; ++n) {
    s.face[n].assign(n + 1, std::vector<int>(s.count[n]));
    for (int i = 0; i <= n; ++i) {
      std::vector<int> map(n);
      for (int e = 0; e < n; ++e) {
        int k = n - 1 - e;
        int th = k < i ? k : k + 1;
        map[e] = n - th;
      }
      for (int y = 0; y < s.count[n]; ++y) s.face[n][i][y] = x.act(c.linear(n - 1), c.linear(n), map, y);
    }
  }
  for (int n = 0; n < top; ++n) {
    s.degen[n].assign(n + 1, std::vector<int>(s.count[n]));
    for (int j = 0; j <= n; ++j) {
      std::vector<int> map(n + 2);
      for (int e = 0; e <= n + 1; ++e) {
        int k = n + 1 - e;
        int th = k <= j ? k : k - 1;
        map[e] = n - th;
      }
      for (int y = 0; y < s.count[n]; ++y) s.degen[n][j][y] = x.act(c.linear(n + 1), c.linear(n), map, y);
    }
  }
  return s;
}

bool simplicial_iso(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b, const std::vector<std::vector<int>>& bij) {
  if (a.count != b.count || static_cast<int>(bij.size()) != static_cast<int>(a.count.size())) return false;
  for (int n = 0; n <= a.dimension(); ++n) {
    std::vector<int> seen(b.count[n], 0);
    for (int y : bij[n])
      if (y < 0 || y >= b.count[n] || seen[y]++) return false;
  }
  for (int n = 1; n <= a.dimension(); ++n)
    for (int i = 0; i <= n; ++i)
      for (int y = 0; y < a.count[n]; ++y)
        if (bij[n - 1][a.face[n][i][y]] != b.face[n][i][bij[n][y]]) return false;
  for (int n = 0; n < a.dimension(); ++n)
    for (int j = 0; j <= n; ++j)
      for (int y = 0; y < a.count[n]; ++y)
        if (bij[n + 1][a.degen[n][j][y]] != b.degen[n][j][bij[n][y]]) return false;
  return true;
}

// ---- tau ----

Presentation tau_presentation(const DendroidalSet& x) {
  const auto& c = x.catalog();
  Presentation p;
  int eta = c.eta();
  for (int z = 0; z < x.count(eta); ++z) p.colors.push_back("c" + std::to_string(z));
  auto color = [&](int shape, int edge, int z) { return x.act(eta, shape, {edge}, z); };
  // generator per corolla dendrex, -1 for identities
  std::map<std::pair<int, int>, int> gen;
  int l1 = c.linear(1);
  std::set<int> degenerate_l1;
  if (l1 >= 0)
    for (int z = 0; z < x.count(eta); ++z) degenerate_l1.insert(x.act(l1, eta, {0, 0}, z));
  for (int n = 0; n <= c.max_arity(); ++n) {
    int s = c.corolla(n);
    if (s < 0) continue;
    const Tree& t = c.shape(s);
    for (int z = 0; z < x.count(s); ++z) {
      if (n == 1 && degenerate_l1.count(z)) {
        gen[{s, z}] = -1;
        continue;
      }
      Generator g{"g" + std::to_string(n) + "_" + std::to_string(z), {}, color(s, t.root(), z)};
      for (int l : t.inputs(t.root())) g.dom.push_back(color(s, l, z));
      gen[{s, z}] = static_cast<int>(p.generators.size());
      p.generators.push_back(g);
    }
  }
  // preorder term of a corolla dendrex, each leaf replaced by sub(edge of the target)
  auto corolla_term = [&](int s, int z, const std::vector<int>& map, const std::function<void(int, std::u16string&)>& sub,
                          std::u16string& out) {
    const Tree& t = c.shape(s);
    int g = gen.at({s, z});
    if (g < 0) {
      sub(map[t.inputs(t.root())[0]], out);
      return;
    }
    out.push_back(static_cast<char16_t>(g));
    for (int l : t.inputs(t.root())) sub(map[l], out);
  };
  auto add_relation = [&](Term a, Term b) {
    if (a == b) return;
    for (const auto& r : p.relations)
      if ((r.first == a && r.second == b) || (r.first == b && r.second == a)) return;
    p.relations.push_back({std::move(a), std::move(b)});
  };
  // corolla symmetries
  for (int n = 2; n <= c.max_arity(); ++n) {
    int s = c.corolla(n);
    if (s < 0) continue;
    const Tree& t = c.shape(s);
    const auto& leaves = t.inputs(t.root());
    for (int z = 0; z < x.count(s); ++z)
      for (const auto& a : c.automorphisms(s)) {
        int y = x.act(s, s, a, z);
        Term lhs = generator_term(p, gen.at({s, y}));
        Perm pi(n);
        for (int j = 0; j < n; ++j)
          pi[j] = static_cast<int>(std::find(leaves.begin(), leaves.end(), a[leaves[j]]) - leaves.begin());
        add_relation(lhs, relabel(generator_term(p, gen.at({s, z})), pi));
      }
  }
  // shapes with one inner edge
  for (int s = 0; s < c.size(); ++s) {
    const Tree& t = c.shape(s);
    if (t.vertex_count() != 2) continue;
    const auto& fs = c.faces(s);
    int inner = -1, top = -1, root = -1;
    for (int a = 0; a < static_cast<int>(fs.size()); ++a) {
      if (fs[a].face.kind == FaceKind::Inner) inner = a;
      if (fs[a].face.kind == FaceKind::Top) top = a;
      if (fs[a].face.kind == FaceKind::Root) root = a;
    }
    if (inner < 0 || top < 0 || root < 0) throw std::logic_error("two-vertex shape without its three faces");
    int e = fs[inner].face.edge;
    std::vector<int> leaves;
    for (int l : t.dfs_order())
      if (t.is_leaf(l)) leaves.push_back(l);
    auto var_of = [&](int edge) {
      return static_cast<int>(std::find(leaves.begin(), leaves.end(), edge) - leaves.begin());
    };
    for (int z = 0; z < x.count(s); ++z) {
      std::vector<int> dom;
      for (int l : leaves) dom.push_back(color(s, l, z));
      int cod = color(s, t.root(), z);
      auto var = [&](int edge, std::u16string& out) { out.push_back(static_cast<char16_t>(kVar + var_of(edge))); };
      Term lhs{{}, dom, cod}, rhs{{}, dom, cod};
      int zi = x.act(fs[inner].shape, s, fs[inner].map, z);
      corolla_term(fs[inner].shape, zi, fs[inner].map, var, lhs.s);
      int zt = x.act(fs[top].shape, s, fs[top].map, z);
      int zr = x.act(fs[root].shape, s, fs[root].map, z);
      corolla_term(
          fs[top].shape, zt, fs[top].map,
          [&](int edge, std::u16string& out) {
            if (edge == e)
              corolla_term(fs[root].shape, zr, fs[root].map, var, out);
            else
              var(edge, out);
          },
          rhs.s);
      add_relation(lhs, rhs);
    }
  }
  return p;
}

bool is_equivalence_dendrex_in_nerve(const TabulatedOperad& p, const Tree& l1, const Dendrex& x) {
  if (!l1.is_linear() || l1.vertex_count() != 1) throw std::invalid_argument("expected a dendrex of shape L1");
  int n = l1.size();
  return is_invertible(p, x[n + l1.root()]);
}

}  // namespace dendro
