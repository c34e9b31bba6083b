#include "dendro/wcon.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>

namespace dendro {

namespace {

std::vector<Tree> reduced_planar_trees(int n) {
  EnumOptions opt;
  opt.max_vertices = std::max(n - 1, 0);
  opt.leaves = n;
  opt.planar = true;
  opt.reduced = true;
  std::vector<Tree> out;
  for (const auto& t : enumerate_trees(opt)) out.push_back(standard_form(t, true).tree);
  return out;
}

std::string make_key(const Tree& t, const std::vector<int>& labels, const std::vector<char>& free) {
  std::string k = canonical_code(t, true) + "|";
  for (int l : labels) k += std::to_string(l) + ",";
  k += "|";
  for (int e = 0; e < t.size(); ++e) k += t.is_inner(e) ? (free[e] ? 'f' : '1') : '.';
  return k;
}

WCell make_cell(const Tree& t, std::vector<int> labels, std::vector<char> free) {
  auto sf = standard_form(t, true);
  WCell c;
  c.labels.assign(t.size(), -1);
  c.free.assign(t.size(), 0);
  for (int i = 0; i < t.size(); ++i) {
    c.labels[i] = labels[sf.iso[i]];
    c.free[i] = free[sf.iso[i]];
  }
  c.tree = std::make_shared<const Tree>(std::move(sf.tree));
  for (char f : c.free) c.dim += f;
  c.key = make_key(*c.tree, c.labels, c.free);
  return c;
}

// contracts the inner edge e, composing the labels of its two vertices
WCell contract(const TabulatedOperad& p, const WCell& c, int e) {
  const Tree& t = *c.tree;
  int par = t.parent(e);
  const auto& pin = t.inputs(par);
  int pos = static_cast<int>(std::find(pin.begin(), pin.end(), e) - pin.begin());
  int h = p.compose(c.labels[par], pos, c.labels[e]);
  if (h < 0) throw OperadError(OperadError::Kind::BoundExceeded, "composite missing from the operad table");
  std::vector<int> old;  // new index -> old index
  std::vector<int> idx(t.size(), -1);
  for (int x = 0; x < t.size(); ++x)
    if (x != e) {
      idx[x] = static_cast<int>(old.size());
      old.push_back(x);
    }
  std::vector<std::string> names;
  std::vector<std::vector<int>> kids(old.size());
  std::vector<char> leaf(old.size());
  std::vector<int> labels(old.size());
  std::vector<char> free(old.size());
  for (size_t i = 0; i < old.size(); ++i) {
    int x = old[i];
    names.push_back(t.name(x));
    leaf[i] = t.is_leaf(x);
    labels[i] = x == par ? h : c.labels[x];
    free[i] = c.free[x];
    for (int k : t.inputs(x)) {
      if (k == e)
        for (int g : t.inputs(e)) kids[i].push_back(idx[g]);
      else
        kids[i].push_back(idx[k]);
    }
  }
  return make_cell(Tree::from_kids(names, kids, leaf, true), labels, free);
}

void check_operad(const TabulatedOperad& p) {
  if (p.color_count() != 1) throw std::invalid_argument("the W-construction here needs a one-colored operad");
  for (int f = 0; f < p.size(); ++f) {
    if (p.arity(f) == 0) throw std::invalid_argument("nullary operations are not supported");
    if (p.arity(f) == 1 && f != p.identity(0))
      throw std::invalid_argument("non-identity unary operations are not supported");
  }
}

}  // namespace

FacePoset w_cells(const OperadPtr& pp, int n, int max_n) {
  if (n < 1 || n > max_n) throw ScaleLimit("W cells are computed for 1 <= n <= " + std::to_string(max_n));
  const TabulatedOperad& p = *pp;
  check_operad(p);
  if (p.arity_bound() < n) throw OperadError(OperadError::Kind::BoundExceeded, "operad tabulated below arity n");
  FacePoset out;
  out.n = n;
  for (const auto& t : reduced_planar_trees(n)) {
    auto verts = t.vertices();
    auto inner = t.inner_edges();
    std::vector<int> labels(t.size(), -1);
    std::function<void(size_t)> rec = [&](size_t k) {
      if (k == verts.size()) {
        for (long mask = 0; mask < (1L << inner.size()); ++mask) {
          std::vector<char> free(t.size(), 0);
          for (size_t i = 0; i < inner.size(); ++i) free[inner[i]] = (mask >> i) & 1;
          out.cells.push_back(make_cell(t, labels, free));
        }
        return;
      }
      for (int f : p.ops_of_arity(t.arity(verts[k]))) {
        labels[verts[k]] = f;
        rec(k + 1);
      }
    };
    rec(0);
  }
  std::sort(out.cells.begin(), out.cells.end(), [](const WCell& a, const WCell& b) {
    return a.dim != b.dim ? a.dim < b.dim : a.key < b.key;
  });
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(out.cells.size()); ++i) idx[out.cells[i].key] = i;
  for (int i = 0; i < static_cast<int>(out.cells.size()); ++i) {
    const WCell& c = out.cells[i];
    if (static_cast<int>(out.cells_by_dim.size()) <= c.dim) out.cells_by_dim.resize(c.dim + 1, 0);
    ++out.cells_by_dim[c.dim];
    out.euler += c.dim % 2 ? -1 : 1;
    for (int e = 0; e < c.tree->size(); ++e) {
      if (!c.free[e]) continue;
      auto one = c.free;
      one[e] = 0;
      out.faces.push_back({i, idx.at(make_key(*c.tree, c.labels, one))});
      out.faces.push_back({i, idx.at(contract(p, c, e).key)});
    }
  }
  return out;
}

std::string cell_label(const WCell& c) {
  std::ostringstream os;
  const Tree& t = *c.tree;
  std::function<void(int)> rec = [&](int e) {
    if (t.is_leaf(e)) {
      os << "|";
      return;
    }
    os << c.labels[e] << "(";
    for (int k : t.inputs(e)) {
      rec(k);
      if (t.has_vertex(k)) os << (c.free[k] ? "~" : "=");
    }
    os << ")";
  };
  rec(t.root());
  return os.str();
}

std::string face_poset_to_dot(const FacePoset& f) {
  std::ostringstream os;
  os << "digraph wcells {\n  rankdir=BT;\n";
  for (int i = 0; i < static_cast<int>(f.cells.size()); ++i)
    os << "  c" << i << " [label=\"" << cell_label(f.cells[i]) << "\\ndim " << f.cells[i].dim << "\"];\n";
  for (const auto& [a, b] : f.faces) os << "  c" << b << " -> c" << a << ";\n";
  os << "}\n";
  return os.str();
}

AssociahedronSummary associahedron_summary(int n) {
  if (n < 2 || n > 7) throw ScaleLimit("associahedra are summarized for 2 <= n <= 7");
  auto p = std::make_shared<const TabulatedOperad>(one_op_per_arity(n, true));
  auto f = w_cells(p, n);
  AssociahedronSummary s;
  s.cells_by_dim = f.cells_by_dim;
  s.euler = f.euler;
  s.vertex_count = f.cells_by_dim.empty() ? 0 : f.cells_by_dim[0];
  for (const auto& c : f.cells) {
    if (c.dim != 0) continue;
    bool binary = true;
    for (int v : c.tree->vertices())
      if (c.tree->arity(v) != 2) binary = false;
    s.binary_vertices += binary;
  }
  return s;
}

WCatHom w_cat_hom(int n, int max_n) {
  if (n < 1) throw std::invalid_argument("w_cat_hom needs n >= 1");
  if (n > max_n) throw ScaleLimit("w_cat_hom is computed for n <= " + std::to_string(max_n));
  auto trees = reduced_planar_trees(n);
  std::map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(trees.size()); ++i) idx[canonical_code(trees[i], true)] = i;
  auto p = std::make_shared<const TabulatedOperad>(one_op_per_arity(std::max(n, 1), true));
  std::vector<std::vector<int>> adj(trees.size());
  for (int i = 0; i < static_cast<int>(trees.size()); ++i) {
    std::vector<int> labels(trees[i].size(), -1);
    for (int v : trees[i].vertices()) labels[v] = p->ops_of_arity(trees[i].arity(v)).front();
    WCell c = make_cell(trees[i], labels, std::vector<char>(trees[i].size(), 0));
    for (int e : c.tree->inner_edges()) {
      int j = idx.at(canonical_code(*contract(*p, c, e).tree, true));
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  }
  WCatHom out;
  out.object_count = static_cast<long>(trees.size());
  std::vector<char> seen(trees.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  long reached = 1;
  while (!q.empty()) {
    int i = q.front();
    q.pop_front();
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        q.push_back(j);
      }
  }
  out.contractible = reached == out.object_count;
  return out;
}

}  // namespace dendro
