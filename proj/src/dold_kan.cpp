#include "dendro/dold_kan.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

namespace dendro {

int PlanarShapes::find(const Tree& t) const {
  auto it = index.find(canonical_code(t, true));
  return it == index.end() ? -1 : it->second;
}

PlanarShapes planar_shapes(int max_vertices, int max_edges) {
  PlanarShapes p;
  p.max_vertices = max_vertices;
  p.max_edges = max_edges < 0 ? 2 * max_vertices + 1 : max_edges;
  EnumOptions opt;
  opt.max_vertices = max_vertices;
  opt.max_edges = p.max_edges;
  opt.planar = true;
  for (const auto& t : enumerate_trees(opt)) {
    auto sf = standard_form(t, true);
    std::string code = canonical_code(sf.tree, true);
    if (p.index.count(code)) continue;
    p.index[code] = static_cast<int>(p.shapes.size());
    p.codes.push_back(code);
    p.shapes.push_back(std::make_shared<const Tree>(std::move(sf.tree)));
  }
  for (const auto& t : p.shapes) {
    p.faces.push_back(std_faces(*t, true));
    std::vector<int> fs;
    for (const auto& f : p.faces.back()) fs.push_back(p.find(*f.source));
    p.face_shape.push_back(fs);
  }
  return p;
}

namespace {

Subface image_in(const std::vector<int>& map, const Subface& f) {
  Subface out;
  for (int e : f.edges) out.edges.push_back(map[e]);
  for (int e : f.leaves) out.leaves.push_back(map[e]);
  std::sort(out.edges.begin(), out.edges.end());
  std::sort(out.leaves.begin(), out.leaves.end());
  return out;
}

// (shape, face) pairs of the two routes to each codimension 2 face of a shape
struct Square {
  int a1, b1, a2, b2;
};

std::vector<Square> squares_of(const PlanarShapes& p, int s) {
  std::vector<Square> out;
  const auto& fs = p.faces[s];
  for (const auto& d : subfaces2(*p.shapes[s])) {
    if (d.ways.size() != 2) throw std::logic_error("codimension 2 face without two factorizations");
    int b[2];
    for (int k = 0; k < 2; ++k) {
      int a = d.ways[k].first;
      int r = p.face_shape[s][a];
      b[k] = -1;
      if (r < 0) break;
      for (int j = 0; j < static_cast<int>(p.faces[r].size()); ++j)
        if (image_in(fs[a].map, p.faces[r][j].face.face) == d.beta) b[k] = j;
      if (b[k] < 0) throw std::logic_error("second face of a square not found");
    }
    if (p.face_shape[s][d.ways[0].first] < 0 || p.face_shape[s][d.ways[1].first] < 0) continue;
    out.push_back({d.ways[0].first, b[0], d.ways[1].first, b[1]});
  }
  return out;
}

}  // namespace

std::optional<SignAssignment> solve_signs(int max_vertices, const SolveOptions& opt, SignSystem* info,
                                          int max_edges) {
  auto p = std::make_shared<const PlanarShapes>(planar_shapes(max_vertices, max_edges));
  int n = static_cast<int>(p->shapes.size());
  std::vector<int> offset(n + 1, 0);
  for (int s = 0; s < n; ++s) offset[s + 1] = offset[s] + static_cast<int>(p->faces[s].size());
  int nv = offset[n];
  auto var = [&](int s, int f) { return opt.reverse_pivots ? nv - 1 - (offset[s] + f) : offset[s] + f; };
  // sparse rows, pivot at the smallest variable
  std::map<int, std::pair<std::vector<int>, char>> basis;
  long equations = 0;
  bool feasible = true;
  for (int s = 0; s < n; ++s)
    for (const auto& q : squares_of(*p, s)) {
      ++equations;
      int r1 = p->face_shape[s][q.a1], r2 = p->face_shape[s][q.a2];
      std::vector<int> row{var(s, q.a1), var(r1, q.b1), var(s, q.a2), var(r2, q.b2)};
      std::sort(row.begin(), row.end());
      std::vector<int> reduced;
      for (size_t i = 0; i < row.size(); ++i) {
        if (i + 1 < row.size() && row[i] == row[i + 1]) {
          ++i;
          continue;
        }
        reduced.push_back(row[i]);
      }
      char rhs = 1;
      while (!reduced.empty()) {
        auto it = basis.find(reduced.front());
        if (it == basis.end()) break;
        std::vector<int> x;
        std::set_symmetric_difference(reduced.begin(), reduced.end(), it->second.first.begin(),
                                      it->second.first.end(), std::back_inserter(x));
        reduced = std::move(x);
        rhs ^= it->second.second;
      }
      if (reduced.empty()) {
        if (rhs) feasible = false;
        continue;
      }
      int lead = reduced.front();
      basis[lead] = {std::move(reduced), rhs};
    }
  if (info) *info = {nv, equations, static_cast<long>(basis.size())};
  if (!feasible) return std::nullopt;
  std::vector<char> x(nv, 0);
  std::mt19937 rng(opt.free_seed);
  if (opt.free_seed)
    for (int v = 0; v < nv; ++v)
      if (!basis.count(v)) x[v] = static_cast<char>(rng() & 1);
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    char v = it->second.second;
    for (int y : it->second.first)
      if (y != it->first) v ^= x[y];
    x[it->first] = v;
  }
  SignAssignment out{p, {}};
  for (int s = 0; s < n; ++s) {
    std::vector<char> b;
    for (int f = 0; f < static_cast<int>(p->faces[s].size()); ++f) b.push_back(x[var(s, f)]);
    out.bits.push_back(std::move(b));
  }
  return out;
}

long count_violations(const SignAssignment& s) {
  const auto& p = *s.shapes;
  long bad = 0;
  for (int t = 0; t < static_cast<int>(p.shapes.size()); ++t)
    for (const auto& q : squares_of(p, t)) {
      int sum = s.bits[t][q.a1] + s.bits[p.face_shape[t][q.a1]][q.b1] + s.bits[t][q.a2] +
                s.bits[p.face_shape[t][q.a2]][q.b2];
      if (sum % 2 != 1) ++bad;
    }
  return bad;
}

int linear_face_index(const PlanarShapes& p, int n, int i) {
  int s = p.find(Tree::linear(n));
  if (s < 0) return -1;
  const Tree& t = *p.shapes[s];
  // standard L_n has edge k at distance k from the root
  for (int f = 0; f < static_cast<int>(p.faces[s].size()); ++f) {
    const auto& e = p.faces[s][f].face.face.edges;
    if (static_cast<int>(e.size()) == t.size() - 1 && std::find(e.begin(), e.end(), n - i) == e.end()) return f;
  }
  return -1;
}

bool gauge_fix(SignAssignment& s) {
  const auto& p = *s.shapes;
  std::vector<char> g(p.shapes.size(), 0);
  for (int n = 1; p.find(Tree::linear(n)) >= 0; ++n) {
    int cur = p.find(Tree::linear(n)), prev = p.find(Tree::linear(n - 1));
    g[cur] = s.bits[cur][linear_face_index(p, n, 0)] ^ g[prev];
  }
  for (size_t t = 0; t < p.shapes.size(); ++t)
    for (size_t f = 0; f < p.faces[t].size(); ++f) s.bits[t][f] ^= g[t] ^ g[p.face_shape[t][f]];
  for (int n = 1; p.find(Tree::linear(n)) >= 0; ++n) {
    int cur = p.find(Tree::linear(n));
    for (int i = 0; i <= n; ++i)
      if (s.bits[cur][linear_face_index(p, n, i)] != i % 2) return false;
  }
  return true;
}

std::optional<std::vector<char>> gauge_between(const SignAssignment& a, const SignAssignment& b) {
  const auto& p = *a.shapes;
  int n = static_cast<int>(p.shapes.size());
  std::vector<std::vector<std::pair<int, char>>> adj(n);
  for (int t = 0; t < n; ++t)
    for (size_t f = 0; f < p.faces[t].size(); ++f) {
      int r = p.face_shape[t][f];
      char d = a.bits[t][f] ^ b.bits[t][f];
      adj[t].push_back({r, d});
      adj[r].push_back({t, d});
    }
  std::vector<char> g(n, -1);
  for (int start = 0; start < n; ++start) {
    if (g[start] >= 0) continue;
    g[start] = 0;
    std::deque<int> q{start};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (auto [v, d] : adj[u]) {
        char want = g[u] ^ d;
        if (g[v] < 0) {
          g[v] = want;
          q.push_back(v);
        } else if (g[v] != want) {
          return std::nullopt;
        }
      }
    }
  }
  return g;
}

bool check_d_squared(const Tree& t, const SignAssignment& s) {
  const auto& p = *s.shapes;
  std::map<Subface, std::map<Subface, long>> d;
  std::deque<Subface> todo{whole(t)};
  while (!todo.empty()) {
    Subface x = todo.front();
    todo.pop_front();
    if (d.count(x)) continue;
    std::vector<int> emb;
    Tree xt = subface_tree(t, x, &emb);
    auto sf = standard_form(xt, true);
    int shape = p.find(sf.tree);
    if (shape < 0) throw MissingSign("no signs for the face " + canonical_code(xt, true));
    std::vector<int> to_t;
    for (int i = 0; i < sf.tree.size(); ++i) to_t.push_back(emb[sf.iso[i]]);
    auto& dx = d[x];
    for (size_t f = 0; f < p.faces[shape].size(); ++f) {
      Subface y = image_in(to_t, p.faces[shape][f].face.face);
      dx[y] += s.sign(shape, static_cast<int>(f));
      todo.push_back(y);
    }
  }
  for (const auto& [x, dx] : d) {
    std::map<Subface, long> dd;
    for (const auto& [y, c] : dx)
      for (const auto& [z, c2] : d.at(y)) dd[z] += c * c2;
    for (const auto& [z, c] : dd)
      if (c != 0) return false;
  }
  return true;
}

}  // namespace dendro
