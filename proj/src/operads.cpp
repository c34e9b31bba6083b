#include "dendro/operads.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>

#include "dendro/errors.hpp"

namespace dendro {

namespace {
const std::vector<int> kEmpty;
}

TabulatedOperad::TabulatedOperad(std::vector<std::string> colors, int arity_bound, bool planar, bool empty_above_bound)
    : colors_(std::move(colors)),
      arity_bound_(arity_bound),
      planar_(planar),
      empty_above_(empty_above_bound),
      ids_(colors_.size(), -1),
      by_arity_(arity_bound + 1) {}

int TabulatedOperad::color_index(const std::string& c) const {
  auto it = std::find(colors_.begin(), colors_.end(), c);
  return it == colors_.end() ? -1 : static_cast<int>(it - colors_.begin());
}

const std::vector<int>& TabulatedOperad::hom(const std::vector<int>& dom, int cod) const {
  auto it = hom_.find({dom, cod});
  return it == hom_.end() ? kEmpty : it->second;
}

const std::vector<int>& TabulatedOperad::ops_of_arity(int n) const {
  if (n < 0 || n > arity_bound_) return kEmpty;
  return by_arity_[n];
}

std::vector<std::pair<std::vector<int>, int>> TabulatedOperad::nonempty_profiles() const {
  std::vector<std::pair<std::vector<int>, int>> out;
  for (const auto& [k, v] : hom_)
    if (!v.empty()) out.push_back(k);
  return out;
}

int TabulatedOperad::compose(int f, int i, int g) const {
  auto it = comp_.find(key(f, i, g));
  return it == comp_.end() ? -1 : it->second;
}

int TabulatedOperad::compose_full(int f, const std::vector<int>& gs) const {
  if (static_cast<int>(gs.size()) != arity(f)) return -1;
  int h = f;
  for (int k = static_cast<int>(gs.size()) - 1; k >= 0; --k) {
    h = compose(h, k, gs[k]);
    if (h < 0) return -1;
  }
  return h;
}

int TabulatedOperad::act(int f, const Perm& sigma) const {
  if (planar_) return is_identity(sigma) ? f : -1;
  if (static_cast<int>(sigma.size()) != arity(f)) return -1;
  return act_[f][perm_rank(sigma)];
}

int TabulatedOperad::find_label(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? -1 : it->second;
}

int TabulatedOperad::add_op(Op op) {
  int id = size();
  int n = static_cast<int>(op.dom.size());
  if (n > arity_bound_) throw OperadError(OperadError::Kind::BoundExceeded, "operation above the arity bound");
  hom_[{op.dom, op.cod}].push_back(id);
  by_arity_[n].push_back(id);
  if (!op.label.empty()) by_label_.emplace(op.label, id);
  ops_.push_back(std::move(op));
  act_.emplace_back(planar_ ? 1 : factorial(n), -1);
  return id;
}

void TabulatedOperad::set_identity(int c, int f) { ids_[c] = f; }
void TabulatedOperad::set_compose(int f, int i, int g, int h) { comp_[key(f, i, g)] = h; }
void TabulatedOperad::set_act(int f, const Perm& sigma, int h) { act_[f][planar_ ? 0 : perm_rank(sigma)] = h; }

// ---- validation ----

namespace {

std::vector<std::vector<int>> ops_by_cod(const TabulatedOperad& p) {
  std::vector<std::vector<int>> out(p.color_count());
  for (int f = 0; f < p.size(); ++f) out[p.op(f).cod].push_back(f);
  return out;
}

// sigma' with (f*s) o_i g = (f o_{s[i]} g) * sigma'
Perm block_perm_left(const Perm& s, int i, int m) {
  int n = static_cast<int>(s.size());
  int si = s[i];
  auto pos = [&](int j) { return j < si ? j : j + m - 1; };
  Perm out;
  for (int k = 0; k < i; ++k) out.push_back(pos(s[k]));
  for (int k = 0; k < m; ++k) out.push_back(si + k);
  for (int k = i + 1; k < n; ++k) out.push_back(pos(s[k]));
  return out;
}

// id + t + id with t acting on the block starting at i
Perm block_perm_right(int n, int i, const Perm& t) {
  int m = static_cast<int>(t.size());
  Perm out;
  for (int k = 0; k < i; ++k) out.push_back(k);
  for (int k = 0; k < m; ++k) out.push_back(i + t[k]);
  for (int k = i + 1; k < n; ++k) out.push_back(k + m - 1);
  return out;
}

}  // namespace

OperadCheck validate_operad(const TabulatedOperad& p) {
  OperadCheck r;
  auto cod = ops_by_cod(p);
  auto fail = [&](bool& flag, const std::string& msg) {
    if (flag) r.failure = msg;
    flag = false;
  };
  for (int c = 0; c < p.color_count(); ++c) {
    int id = p.identity(c);
    if (id < 0 || p.op(id).cod != c || p.op(id).dom != std::vector<int>{c}) fail(r.units, "bad identity");
  }
  if (!r.units) return r;
  for (int f = 0; f < p.size(); ++f) {
    const auto& of = p.op(f);
    if (p.compose(p.identity(of.cod), 0, f) != f) fail(r.units, "left unit fails at " + of.label);
    for (int i = 0; i < p.arity(f); ++i)
      if (p.compose(f, i, p.identity(of.dom[i])) != f) fail(r.units, "right unit fails at " + of.label);
  }
  // associativity
  for (int f = 0; f < p.size() && r.associative; ++f) {
    int nf = p.arity(f);
    for (int i = 0; i < nf; ++i)
      for (int g : cod[p.op(f).dom[i]]) {
        int fg = p.compose(f, i, g);
        int ng = p.arity(g);
        for (int j = 0; j < ng; ++j)
          for (int h : cod[p.op(g).dom[j]]) {
            int gh = p.compose(g, j, h);
            int l = fg < 0 ? -1 : p.compose(fg, i + j, h);
            int rr = gh < 0 ? -1 : p.compose(f, i, gh);
            if (l >= 0 && rr >= 0 && l != rr) fail(r.associative, "sequential associativity fails");
          }
        for (int k = i + 1; k < nf; ++k)
          for (int h : cod[p.op(f).dom[k]]) {
            int fh = p.compose(f, k, h);
            int l = fh < 0 ? -1 : p.compose(fh, i, g);
            int rr = fg < 0 ? -1 : p.compose(fg, k + ng - 1, h);
            if (l >= 0 && rr >= 0 && l != rr) fail(r.associative, "parallel associativity fails");
          }
      }
  }
  if (p.planar()) return r;
  // action
  for (int f = 0; f < p.size() && r.action; ++f) {
    int n = p.arity(f);
    auto perms = all_perms(n);
    if (p.act(f, identity_perm(n)) != f) fail(r.action, "identity permutation acts nontrivially");
    for (const auto& s : perms) {
      int fs = p.act(f, s);
      if (fs < 0) {
        fail(r.action, "missing action entry");
        break;
      }
      for (int k = 0; k < n; ++k)
        if (p.op(fs).dom[k] != p.op(f).dom[s[k]]) fail(r.action, "action does not permute the profile");
      for (const auto& t : perms)
        if (p.act(fs, t) != p.act(f, compose_perm(s, t))) fail(r.action, "not a right action");
    }
  }
  // equivariance
  for (int f = 0; f < p.size() && r.equivariant; ++f) {
    int n = p.arity(f);
    for (const auto& s : all_perms(n)) {
      int fs = p.act(f, s);
      for (int i = 0; i < n; ++i)
        for (int g : cod[p.op(fs).dom[i]]) {
          int l = p.compose(fs, i, g);
          int h = p.compose(f, s[i], g);
          if (l < 0 || h < 0) continue;
          if (p.act(h, block_perm_left(s, i, p.arity(g))) != l) fail(r.equivariant, "left equivariance fails");
        }
    }
    for (int i = 0; i < n; ++i)
      for (int g : cod[p.op(f).dom[i]]) {
        int fg = p.compose(f, i, g);
        if (fg < 0) continue;
        for (const auto& t : all_perms(p.arity(g))) {
          int l = p.compose(f, i, p.act(g, t));
          if (l >= 0 && p.act(fg, block_perm_right(n, i, t)) != l) fail(r.equivariant, "right equivariance fails");
        }
      }
  }
  return r;
}

// ---- standard operads ----

TabulatedOperad make_as(int arity_bound, bool with_unit) {
  using W = std::vector<int>;
  OperadBuilder<W> b;
  b.colors = {"*"};
  b.arity_bound = arity_bound;
  b.profile = [](const W& w) { return std::make_pair(std::vector<int>(w.size(), 0), 0); };
  b.compose = [](const W& f, int i, const W& g) -> std::optional<W> {
    W out;
    int m = static_cast<int>(g.size());
    for (int x : f) {
      if (x < i)
        out.push_back(x);
      else if (x == i)
        for (int y : g) out.push_back(y + i);
      else
        out.push_back(x + m - 1);
    }
    return out;
  };
  b.act = [](const W& w, const Perm& s) {
    Perm inv = inverse(s);
    W out;
    for (int x : w) out.push_back(inv[x]);
    return out;
  };
  b.identity = [](int) { return W{0}; };
  b.label = [](const W& w) {
    std::string s = "as[";
    for (size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
    return s + "]";
  };
  std::vector<W> all;
  for (int n = with_unit ? 0 : 1; n <= arity_bound; ++n)
    for (auto& p : all_perms(n)) all.push_back(p);
  auto p = b.build(all);
  p.name = "As";
  return p;
}

namespace {

OperadBuilder<int> arity_builder(int bound, bool planar) {
  OperadBuilder<int> b;
  b.colors = {"*"};
  b.arity_bound = bound;
  b.planar = planar;
  b.profile = [](const int& n) { return std::make_pair(std::vector<int>(n, 0), 0); };
  b.compose = [](const int& f, int, const int& g) -> std::optional<int> { return f + g - 1; };
  b.act = [](const int& f, const Perm&) { return f; };
  b.identity = [](int) { return 1; };
  b.label = [](const int& n) { return "m" + std::to_string(n); };
  return b;
}

}  // namespace

TabulatedOperad make_comm(int arity_bound, bool with_unit) {
  auto b = arity_builder(arity_bound, false);
  std::vector<int> all;
  for (int n = with_unit ? 0 : 1; n <= arity_bound; ++n) all.push_back(n);
  auto p = b.build(all);
  p.name = "Comm";
  return p;
}

TabulatedOperad one_op_per_arity(int arity_bound, bool planar) {
  auto b = arity_builder(arity_bound, planar);
  std::vector<int> all;
  for (int n = 1; n <= arity_bound; ++n) all.push_back(n);
  auto p = b.build(all);
  p.name = "OneOp";
  return p;
}

TabulatedOperad make_unit_operad() {
  TabulatedOperad p({"*"}, 1, false, true);
  int id = p.add_op({{0}, 0, "id"});
  p.set_identity(0, id);
  p.set_compose(id, 0, id, id);
  p.set_act(id, {0}, id);
  p.name = "Unit";
  return p;
}

TabulatedOperad free_operad_on_tree(const Tree& t) {
  using V = std::pair<int, std::vector<int>>;
  // leaf sets of subtrees rooted at each edge
  std::vector<std::vector<std::vector<int>>> sets(t.size());
  auto order = t.dfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int x = *it;
    std::vector<std::vector<int>> s{{x}};
    if (t.has_vertex(x)) {
      std::vector<std::vector<int>> acc{{}};
      for (int c : t.inputs(x)) {
        std::vector<std::vector<int>> next;
        for (const auto& a : acc)
          for (const auto& b : sets[c]) {
            auto m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(m);
          }
        acc = std::move(next);
      }
      for (auto& a : acc) s.push_back(a);
    }
    sets[x] = std::move(s);
  }
  std::vector<V> all;
  int bound = 1;
  for (int r = 0; r < t.size(); ++r)
    for (auto l : sets[r]) {
      bound = std::max(bound, static_cast<int>(l.size()));
      std::sort(l.begin(), l.end());
      do all.push_back({r, l});
      while (std::next_permutation(l.begin(), l.end()));
    }
  OperadBuilder<V> b;
  b.colors = t.names();
  b.arity_bound = bound;
  b.empty_above_bound = true;
  b.profile = [](const V& v) { return std::make_pair(v.second, v.first); };
  b.compose = [](const V& f, int i, const V& g) -> std::optional<V> {
    V out{f.first, {}};
    for (int k = 0; k < static_cast<int>(f.second.size()); ++k) {
      if (k == i)
        out.second.insert(out.second.end(), g.second.begin(), g.second.end());
      else
        out.second.push_back(f.second[k]);
    }
    return out;
  };
  b.act = [](const V& f, const Perm& s) {
    V out{f.first, {}};
    for (int k : s) out.second.push_back(f.second[k]);
    return out;
  };
  b.identity = [](int c) { return V{c, {c}}; };
  b.label = [&t](const V& v) {
    std::string s = t.name(v.first) + "(";
    for (size_t k = 0; k < v.second.size(); ++k) s += (k ? "," : "") + t.name(v.second[k]);
    return s + ")";
  };
  auto p = b.build(all);
  p.name = "Omega(" + canonical_code(t, false) + ")";
  return p;
}

// ---- environment operad of finite sets ----

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<int> environment_table(const TabulatedOperad& e, int f) {
  // the table is stored in the label after '|'
  const auto& lab = e.op(f).label;
  auto bar = lab.find('|');
  std::vector<int> out;
  for (size_t k = bar + 1; k < lab.size(); ++k) out.push_back(lab[k] - '0');
  return out;
}

constexpr long kMaxEnvironmentOps = 50000;

TabulatedOperad environment_operad(const std::vector<int>& sizes, int arity_bound) {
  int nc = static_cast<int>(sizes.size());
  std::vector<std::string> colors;
  for (int c = 0; c < nc; ++c) colors.push_back("S" + std::to_string(c) + "#" + std::to_string(sizes[c]));
  TabulatedOperad p(colors, arity_bound, false, false);
  struct Prof {
    std::vector<int> dom;
    int cod;
    int offset;
    int inputs;  // product of domain sizes
    int count;
  };
  std::vector<Prof> profs;
  std::map<std::pair<std::vector<int>, int>, int> prof_index;
  int total = 0;
  for (int n = 0; n <= arity_bound; ++n) {
    std::vector<int> dom(n, 0);
    while (true) {
      int inputs = 1;
      for (int c : dom) inputs *= sizes[c];
      for (int cod = 0; cod < nc; ++cod) {
        if (std::pow(static_cast<double>(sizes[cod]), inputs) + total > kMaxEnvironmentOps)
          throw ScaleLimit("environment operad has more than " + std::to_string(kMaxEnvironmentOps) + " operations");
        int count = ipow(sizes[cod], inputs);
        prof_index[{dom, cod}] = static_cast<int>(profs.size());
        profs.push_back({dom, cod, total, inputs, count});
        total += count;
      }
      int k = n - 1;
      while (k >= 0 && dom[k] == nc - 1) dom[k--] = 0;
      if (k < 0) break;
      ++dom[k];
    }
  }
  // operation id -> (profile, table)
  std::vector<int> prof_of(total);
  for (int pi = 0; pi < static_cast<int>(profs.size()); ++pi) {
    const auto& pr = profs[pi];
    for (int code = 0; code < pr.count; ++code) {
      std::vector<int> table(pr.inputs);
      int x = code;
      for (int k = 0; k < pr.inputs; ++k) {
        table[k] = x % sizes[pr.cod];
        x /= sizes[pr.cod];
      }
      std::string lab = "env" + std::to_string(pr.offset + code) + "|";
      for (int v : table) lab += static_cast<char>('0' + v);
      prof_of[p.add_op({pr.dom, pr.cod, lab})] = pi;
    }
  }
  auto table_of = [&](int f) {
    const auto& pr = profs[prof_of[f]];
    std::vector<int> t(pr.inputs);
    int x = f - pr.offset;
    for (int k = 0; k < pr.inputs; ++k) {
      t[k] = x % sizes[pr.cod];
      x /= sizes[pr.cod];
    }
    return t;
  };
  auto encode = [&](int pi, const std::vector<int>& t) {
    const auto& pr = profs[pi];
    int code = 0;
    for (int k = pr.inputs - 1; k >= 0; --k) code = code * sizes[pr.cod] + t[k];
    return pr.offset + code;
  };
  // decode a row-major input index into per-argument values (first argument most significant)
  auto split = [&](const std::vector<int>& dom, int idx) {
    std::vector<int> args(dom.size());
    for (int k = static_cast<int>(dom.size()) - 1; k >= 0; --k) {
      args[k] = idx % sizes[dom[k]];
      idx /= sizes[dom[k]];
    }
    return args;
  };
  auto join = [&](const std::vector<int>& dom, const std::vector<int>& args) {
    int idx = 0;
    for (size_t k = 0; k < dom.size(); ++k) idx = idx * sizes[dom[k]] + args[k];
    return idx;
  };
  for (int c = 0; c < nc; ++c) {
    std::vector<int> t(sizes[c]);
    std::iota(t.begin(), t.end(), 0);
    p.set_identity(c, encode(prof_index[{{c}, c}], t));
  }
  std::vector<std::vector<int>> by_cod(nc);
  for (int f = 0; f < total; ++f) by_cod[profs[prof_of[f]].cod].push_back(f);
  for (int f = 0; f < total; ++f) {
    const auto& pf = profs[prof_of[f]];
    int n = static_cast<int>(pf.dom.size());
    auto tf = table_of(f);
    for (int i = 0; i < n; ++i) {
      for (int g : by_cod[pf.dom[i]]) {
        const auto& pg = profs[prof_of[g]];
        int m = static_cast<int>(pg.dom.size());
        if (n + m - 1 > arity_bound) continue;
        auto tg = table_of(g);
        std::vector<int> dom(pf.dom.begin(), pf.dom.begin() + i);
        dom.insert(dom.end(), pg.dom.begin(), pg.dom.end());
        dom.insert(dom.end(), pf.dom.begin() + i + 1, pf.dom.end());
        int pi = prof_index[{dom, pf.cod}];
        std::vector<int> t(profs[pi].inputs);
        for (int idx = 0; idx < profs[pi].inputs; ++idx) {
          auto args = split(dom, idx);
          std::vector<int> gargs(args.begin() + i, args.begin() + i + m);
          std::vector<int> fargs(args.begin(), args.begin() + i);
          fargs.push_back(tg[join(pg.dom, gargs)]);
          fargs.insert(fargs.end(), args.begin() + i + m, args.end());
          t[idx] = tf[join(pf.dom, fargs)];
        }
        p.set_compose(f, i, g, encode(pi, t));
      }
    }
    for (const auto& s : all_perms(n)) {
      std::vector<int> dom(n);
      for (int k = 0; k < n; ++k) dom[k] = pf.dom[s[k]];
      int pi = prof_index[{dom, pf.cod}];
      std::vector<int> t(profs[pi].inputs);
      for (int idx = 0; idx < profs[pi].inputs; ++idx) {
        auto args = split(dom, idx);  // args[k] is the value of original argument s[k]
        std::vector<int> orig(n);
        for (int k = 0; k < n; ++k) orig[s[k]] = args[k];
        t[idx] = tf[join(pf.dom, orig)];
      }
      p.set_act(f, s, encode(pi, t));
    }
  }
  p.name = "Env";
  return p;
}

// ---- categories ----

bool FiniteCategory::validate() const {
  int n = static_cast<int>(arrows.size());
  if (static_cast<int>(comp.size()) != n) return false;
  for (size_t o = 0; o < objects.size(); ++o) {
    int id = identity[o];
    if (arrows[id].src != static_cast<int>(o) || arrows[id].tgt != static_cast<int>(o)) return false;
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      bool composable = arrows[g].src == arrows[f].tgt;
      int h = comp[g][f];
      if (composable != (h >= 0)) return false;
      if (h >= 0 && (arrows[h].src != arrows[f].src || arrows[h].tgt != arrows[g].tgt)) return false;
    }
  for (int f = 0; f < n; ++f) {
    if (comp[identity[arrows[f].tgt]][f] != f || comp[f][identity[arrows[f].src]] != f) return false;
  }
  for (int h = 0; h < n; ++h)
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f) {
        if (comp[h][g] < 0 || comp[g][f] < 0) continue;
        if (comp[comp[h][g]][f] != comp[h][comp[g][f]]) return false;
      }
  return true;
}

std::vector<int> FiniteCategory::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < static_cast<int>(arrows.size()); ++f)
    if (arrows[f].src == a && arrows[f].tgt == b) out.push_back(f);
  return out;
}

bool FiniteCategory::is_iso(int f) const {
  for (int g : hom(arrows[f].tgt, arrows[f].src))
    if (comp[g][f] == identity[arrows[f].src] && comp[f][g] == identity[arrows[f].tgt]) return true;
  return false;
}

bool isomorphic_categories(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.objects.size() != b.objects.size() || a.arrows.size() != b.arrows.size()) return false;
  int no = static_cast<int>(a.objects.size());
  int na = static_cast<int>(a.arrows.size());
  Perm obj = identity_perm(no);
  do {
    bool ok = true;
    for (int x = 0; x < no && ok; ++x)
      for (int y = 0; y < no && ok; ++y)
        if (a.hom(x, y).size() != b.hom(obj[x], obj[y]).size()) ok = false;
    if (!ok) continue;
    std::vector<int> m(na, -1);
    std::vector<char> used(na, 0);
    std::function<bool(int)> go = [&](int f) -> bool {
      if (f == na) {
        for (int g = 0; g < na; ++g)
          for (int h = 0; h < na; ++h) {
            int c = a.comp[g][h];
            if (c >= 0 && b.comp[m[g]][m[h]] != m[c]) return false;
          }
        return true;
      }
      for (int g : b.hom(obj[a.arrows[f].src], obj[a.arrows[f].tgt])) {
        if (used[g]) continue;
        if (a.identity[a.arrows[f].src] == f && b.identity[obj[a.arrows[f].src]] != g) continue;
        used[g] = 1;
        m[f] = g;
        if (go(f + 1)) return true;
        used[g] = 0;
      }
      return false;
    };
    if (go(0)) return true;
  } while (std::next_permutation(obj.begin(), obj.end()));
  return false;
}

FiniteCategory terminal_category() {
  FiniteCategory c;
  c.objects = {"*"};
  c.arrows = {{0, 0, "id"}};
  c.identity = {0};
  c.comp = {{0}};
  return c;
}

FiniteCategory iso_category() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "f"}, {1, 0, "g"}};
  c.identity = {0, 1};
  // comp[g][f]
  c.comp = {
      {0, -1, -1, 3},
      {-1, 1, 2, -1},
      {2, -1, -1, 1},
      {-1, 3, 0, -1},
  };
  return c;
}

FiniteCategory poset_category(const std::vector<std::vector<bool>>& le) {
  FiniteCategory c;
  int n = static_cast<int>(le.size());
  std::map<std::pair<int, int>, int> idx;
  for (int i = 0; i < n; ++i) c.objects.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) {
        idx[{i, j}] = static_cast<int>(c.arrows.size());
        c.arrows.push_back({i, j, std::to_string(i) + "<=" + std::to_string(j)});
      }
  for (int i = 0; i < n; ++i) c.identity.push_back(idx.at({i, i}));
  int na = static_cast<int>(c.arrows.size());
  c.comp.assign(na, std::vector<int>(na, -1));
  for (int g = 0; g < na; ++g)
    for (int f = 0; f < na; ++f)
      if (c.arrows[g].src == c.arrows[f].tgt) c.comp[g][f] = idx.at({c.arrows[f].src, c.arrows[g].tgt});
  return c;
}

TabulatedOperad j_lower(const FiniteCategory& c) {
  TabulatedOperad p(c.objects, 1, false, true);
  for (const auto& a : c.arrows) p.add_op({{a.src}, a.tgt, a.name});
  for (size_t o = 0; o < c.objects.size(); ++o) p.set_identity(static_cast<int>(o), c.identity[o]);
  for (int g = 0; g < static_cast<int>(c.arrows.size()); ++g) {
    p.set_act(g, {0}, g);
    for (int f = 0; f < static_cast<int>(c.arrows.size()); ++f)
      if (c.comp[g][f] >= 0) p.set_compose(g, 0, f, c.comp[g][f]);
  }
  p.name = "j_lower";
  return p;
}

FiniteCategory j_upper(const TabulatedOperad& p) {
  FiniteCategory c;
  c.objects = p.colors();
  std::vector<int> ops = p.ops_of_arity(1);
  std::map<int, int> idx;
  for (int f : ops) {
    idx[f] = static_cast<int>(c.arrows.size());
    c.arrows.push_back({p.op(f).dom[0], p.op(f).cod, p.op(f).label});
  }
  for (int o = 0; o < p.color_count(); ++o) c.identity.push_back(idx.at(p.identity(o)));
  int n = static_cast<int>(ops.size());
  c.comp.assign(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      int h = p.compose(ops[g], 0, ops[f]);
      if (h >= 0) c.comp[g][f] = idx.at(h);
    }
  return c;
}

TabulatedOperad j_star(const FiniteCategory& c, int arity_bound) {
  struct V {
    std::vector<int> dom;
    int cod;
    int arrow;
    bool operator<(const V& o) const { return std::tie(dom, cod, arrow) < std::tie(o.dom, o.cod, o.arrow); }
  };
  int no = static_cast<int>(c.objects.size());
  bool codiscrete = true;
  for (int a = 0; a < no; ++a)
    for (int b = 0; b < no; ++b)
      if (c.hom(a, b).size() != 1) codiscrete = false;
  OperadBuilder<V> b;
  b.colors = c.objects;
  b.arity_bound = arity_bound;
  b.profile = [](const V& v) { return std::make_pair(v.dom, v.cod); };
  b.compose = [&c](const V& f, int i, const V& g) -> std::optional<V> {
    V out{{}, f.cod, -1};
    out.dom.assign(f.dom.begin(), f.dom.begin() + i);
    out.dom.insert(out.dom.end(), g.dom.begin(), g.dom.end());
    out.dom.insert(out.dom.end(), f.dom.begin() + i + 1, f.dom.end());
    if (out.dom.size() == 1) {
      if (f.arrow >= 0 && g.arrow >= 0)
        out.arrow = c.comp[f.arrow][g.arrow];
      else
        out.arrow = c.hom(out.dom[0], out.cod)[0];
    }
    return out;
  };
  b.act = [](const V& f, const Perm& s) {
    V out{{}, f.cod, f.arrow};
    for (int k : s) out.dom.push_back(f.dom[k]);
    return out;
  };
  b.identity = [&c](int o) { return V{{o}, o, c.identity[o]}; };
  b.label = [&c](const V& v) {
    if (v.arrow >= 0) return c.arrows[v.arrow].name;
    std::string s = "u(";
    for (size_t k = 0; k < v.dom.size(); ++k) s += (k ? "," : "") + c.objects[v.dom[k]];
    return s + ";" + c.objects[v.cod] + ")";
  };
  std::vector<V> all;
  for (int f = 0; f < static_cast<int>(c.arrows.size()); ++f) all.push_back({{c.arrows[f].src}, c.arrows[f].tgt, f});
  for (int n = codiscrete ? 0 : 2; n <= arity_bound; ++n) {
    if (n == 1) continue;
    std::vector<int> dom(n, 0);
    while (true) {
      for (int cod = 0; cod < no; ++cod) all.push_back({dom, cod, -1});
      int k = n - 1;
      while (k >= 0 && dom[k] == no - 1) dom[k--] = 0;
      if (k < 0) break;
      ++dom[k];
    }
  }
  auto p = b.build(all);
  p.name = "j_star";
  return p;
}

// ---- functors ----

namespace {

std::vector<int> mapped(const std::vector<int>& cm, const std::vector<int>& cs) {
  std::vector<int> out;
  for (int c : cs) out.push_back(cm[c]);
  return out;
}

}  // namespace

bool validate_functor(const OperadFunctor& f, std::string* failure) {
  const auto& p = *f.source;
  const auto& q = *f.target;
  auto bad = [&](const std::string& m) {
    if (failure) *failure = m;
    return false;
  };
  if (static_cast<int>(f.color_map.size()) != p.color_count() || static_cast<int>(f.op_map.size()) != p.size())
    return bad("size mismatch");
  for (int x = 0; x < p.size(); ++x) {
    int y = f.op_map[x];
    if (y < 0 || y >= q.size()) return bad("operation unmapped");
    if (q.op(y).cod != f.color_map[p.op(x).cod] || q.op(y).dom != mapped(f.color_map, p.op(x).dom))
      return bad("profile not preserved at " + p.op(x).label);
  }
  for (int c = 0; c < p.color_count(); ++c)
    if (f.op_map[p.identity(c)] != q.identity(f.color_map[c])) return bad("identity not preserved");
  auto cod = ops_by_cod(p);
  for (int x = 0; x < p.size(); ++x) {
    for (int i = 0; i < p.arity(x); ++i)
      for (int g : cod[p.op(x).dom[i]]) {
        int h = p.compose(x, i, g);
        if (h < 0) continue;
        if (q.compose(f.op_map[x], i, f.op_map[g]) != f.op_map[h]) return bad("composition not preserved");
      }
    if (!p.planar())
      for (const auto& s : all_perms(p.arity(x)))
        if (q.act(f.op_map[x], s) != f.op_map[p.act(x, s)]) return bad("action not preserved");
  }
  return true;
}

OperadFunctor identity_functor(const OperadPtr& p) {
  OperadFunctor f{p, p, identity_perm(p->color_count()), identity_perm(p->size())};
  return f;
}

GeneratingSet generating_set(const TabulatedOperad& p) {
  GeneratingSet gs;
  int n = p.size();
  gs.derivation.assign(n, {Derivation::Kind::Generator});
  std::vector<char> known(n, 0);
  std::vector<int> known_list;
  std::deque<int> work;
  auto add = [&](int x, Derivation d) {
    if (x < 0 || known[x]) return;
    known[x] = 1;
    gs.derivation[x] = d;
    gs.order.push_back(x);
    known_list.push_back(x);
    work.push_back(x);
  };
  auto close = [&]() {
    while (!work.empty()) {
      int x = work.front();
      work.pop_front();
      if (!p.planar()) {
        auto perms = all_perms(p.arity(x));
        for (size_t r = 0; r < perms.size(); ++r) add(p.act(x, perms[r]), {Derivation::Kind::Act, x, -1, static_cast<int>(r)});
      }
      for (size_t k = 0; k < known_list.size(); ++k) {
        int y = known_list[k];
        for (int i = 0; i < p.arity(x); ++i)
          if (p.op(y).cod == p.op(x).dom[i]) add(p.compose(x, i, y), {Derivation::Kind::Compose, x, y, i});
        for (int i = 0; i < p.arity(y); ++i)
          if (p.op(x).cod == p.op(y).dom[i]) add(p.compose(y, i, x), {Derivation::Kind::Compose, y, x, i});
      }
    }
  };
  for (int c = 0; c < p.color_count(); ++c) add(p.identity(c), {Derivation::Kind::Identity, c});
  close();
  for (int a = 0; a <= p.arity_bound(); ++a)
    for (int f : p.ops_of_arity(a)) {
      if (known[f]) continue;
      gs.generators.push_back(f);
      add(f, {Derivation::Kind::Generator});
      close();
    }
  return gs;
}

std::vector<OperadFunctor> enumerate_functors(const OperadPtr& pp, const OperadPtr& qp, const FunctorOptions& opt) {
  const auto& p = *pp;
  const auto& q = *qp;
  int max_arity = 0;
  for (int f = 0; f < p.size(); ++f) max_arity = std::max(max_arity, p.arity(f));
  if (max_arity > q.arity_bound())
    throw OperadError(OperadError::Kind::BoundExceeded, "target operad is tabulated below the source arities");
  auto gs = generating_set(p);
  int n = p.size();

  // table entries of P, indexed by participating operations
  struct Entry {
    int f, i, g, h;  // compose: i >= 0; act: i = -1 - perm rank, g unused
  };
  std::vector<Entry> entries;
  std::vector<std::vector<int>> touch(n);
  auto cod = ops_by_cod(p);
  for (int f = 0; f < n; ++f) {
    for (int i = 0; i < p.arity(f); ++i)
      for (int g : cod[p.op(f).dom[i]]) {
        int h = p.compose(f, i, g);
        if (h < 0) continue;
        int id = static_cast<int>(entries.size());
        entries.push_back({f, i, g, h});
        touch[f].push_back(id);
        if (g != f) touch[g].push_back(id);
        if (h != f && h != g) touch[h].push_back(id);
      }
    if (!p.planar()) {
      auto perms = all_perms(p.arity(f));
      for (size_t r = 1; r < perms.size(); ++r) {
        int h = p.act(f, perms[r]);
        int id = static_cast<int>(entries.size());
        entries.push_back({f, -1 - static_cast<int>(r), -1, h});
        touch[f].push_back(id);
        if (h != f) touch[h].push_back(id);
      }
    }
  }

  std::vector<int> cm(p.color_count(), -1);
  if (!opt.color_map.empty()) cm = opt.color_map;
  std::vector<int> F(n, -1);
  std::vector<OperadFunctor> out;
  bool stop = false;

  auto entry_ok = [&](const Entry& e) {
    if (F[e.f] < 0 || F[e.h] < 0) return true;
    if (e.i >= 0) {
      if (F[e.g] < 0) return true;
      return q.compose(F[e.f], e.i, F[e.g]) == F[e.h];
    }
    auto s = perm_unrank(p.arity(e.f), -1 - e.i);
    return q.act(F[e.f], s) == F[e.h];
  };
  // Extend F along derivations; returns false on inconsistency. Records newly set ops.
  auto propagate = [&](std::vector<int>& set_now) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (int x : gs.order) {
        if (F[x] >= 0) continue;
        const auto& d = gs.derivation[x];
        int v = -1;
        switch (d.kind) {
          case Derivation::Kind::Identity:
            if (cm[d.a] >= 0) v = q.identity(cm[d.a]);
            break;
          case Derivation::Kind::Generator:
            break;
          case Derivation::Kind::Act:
            if (F[d.a] >= 0) {
              v = q.act(F[d.a], perm_unrank(p.arity(d.a), d.i));
              if (v < 0) return false;
            }
            break;
          case Derivation::Kind::Compose:
            if (F[d.a] >= 0 && F[d.b] >= 0) {
              v = q.compose(F[d.a], d.i, F[d.b]);
              if (v < 0) return false;
            }
            break;
        }
        if (v < 0) continue;
        // colors must agree with the color map (assigning free colors)
        const auto& px = p.op(x);
        const auto& qv = q.op(v);
        std::vector<int> assigned;
        bool ok = true;
        auto fit = [&](int pc, int qc) {
          if (cm[pc] < 0) {
            cm[pc] = qc;
            assigned.push_back(pc);
          } else if (cm[pc] != qc) {
            ok = false;
          }
        };
        fit(px.cod, qv.cod);
        for (size_t k = 0; k < px.dom.size() && ok; ++k) fit(px.dom[k], qv.dom[k]);
        if (!ok) {
          for (int c : assigned) cm[c] = -1;
          return false;
        }
        F[x] = v;
        set_now.push_back(x);
        for (int id : touch[x])
          if (!entry_ok(entries[id])) return false;
        progress = true;
      }
    }
    return true;
  };

  std::vector<int> free_colors;
  std::function<void(size_t)> assign_free;
  std::function<void(size_t)> go = [&](size_t k) {
    if (stop) return;
    if (k == gs.generators.size()) {
      free_colors.clear();
      for (int c = 0; c < p.color_count(); ++c)
        if (cm[c] < 0) free_colors.push_back(c);
      assign_free(0);
      return;
    }
    int gen = gs.generators[k];
    const auto& pg = p.op(gen);
    std::vector<int> cands = q.ops_of_arity(p.arity(gen));
    if (opt.rng) std::shuffle(cands.begin(), cands.end(), *opt.rng);
    for (int c : cands) {
      if (stop) return;
      const auto& qc = q.op(c);
      std::vector<int> saved = cm;
      bool ok = true;
      auto fit = [&](int pc, int col) {
        if (cm[pc] < 0)
          cm[pc] = col;
        else if (cm[pc] != col)
          ok = false;
      };
      fit(pg.cod, qc.cod);
      for (size_t i = 0; i < pg.dom.size() && ok; ++i) fit(pg.dom[i], qc.dom[i]);
      std::vector<int> set_now;
      if (ok) {
        F[gen] = c;
        set_now.push_back(gen);
        for (int id : touch[gen])
          if (!entry_ok(entries[id])) ok = false;
        if (ok) ok = propagate(set_now);
        if (ok) go(k + 1);
      }
      for (int x : set_now) F[x] = -1;
      cm = saved;
    }
  };
  assign_free = [&](size_t k) {
    if (stop) return;
    if (k == free_colors.size()) {
      std::vector<int> saved = cm;
      std::vector<int> set_now;
      bool ok = propagate(set_now);
      if (ok && std::find(F.begin(), F.end(), -1) == F.end()) {
        out.push_back({pp, qp, cm, F});
        if (opt.limit >= 0 && static_cast<long>(out.size()) >= opt.limit) stop = true;
      }
      for (int x : set_now) F[x] = -1;
      cm = saved;
      return;
    }
    std::vector<int> cols = identity_perm(q.color_count());
    if (opt.rng) std::shuffle(cols.begin(), cols.end(), *opt.rng);
    for (int col : cols) {
      cm[free_colors[k]] = col;
      assign_free(k + 1);
      cm[free_colors[k]] = -1;
      if (stop) return;
    }
  };
  // identities of pre-assigned colors
  {
    std::vector<int> set_now;
    if (!propagate(set_now)) return out;
    go(0);
  }
  std::sort(out.begin(), out.end(), [](const OperadFunctor& a, const OperadFunctor& b) {
    return std::tie(a.color_map, a.op_map) < std::tie(b.color_map, b.op_map);
  });
  return out;
}

bool is_invertible(const TabulatedOperad& p, int f, int* inverse_out) {
  if (p.arity(f) != 1) return false;
  int d = p.op(f).dom[0], c = p.op(f).cod;
  for (int g : p.hom({c}, d))
    if (p.compose(f, 0, g) == p.identity(c) && p.compose(g, 0, f) == p.identity(d)) {
      if (inverse_out) *inverse_out = g;
      return true;
    }
  return false;
}

bool is_isofibration(const OperadFunctor& f) {
  const auto& p = *f.source;
  const auto& q = *f.target;
  for (int c = 0; c < p.color_count(); ++c) {
    int fc = f.color_map[c];
    for (int u : q.ops_of_arity(1)) {
      if (q.op(u).dom[0] != fc || !is_invertible(q, u)) continue;
      bool lifted = false;
      for (int g : p.ops_of_arity(1))
        if (p.op(g).dom[0] == c && f.op_map[g] == u && is_invertible(p, g)) lifted = true;
      if (!lifted) return false;
    }
  }
  return true;
}

bool is_equivalence(const OperadFunctor& f) {
  const auto& p = *f.source;
  const auto& q = *f.target;
  int bound = std::min(p.arity_bound(), q.arity_bound());
  int nc = p.color_count();
  for (int n = 0; n <= bound; ++n) {
    std::vector<int> dom(n, 0);
    while (true) {
      for (int c = 0; c < nc; ++c) {
        const auto& hp = p.hom(dom, c);
        const auto& hq = q.hom(mapped(f.color_map, dom), f.color_map[c]);
        if (hp.size() != hq.size()) return false;
        std::set<int> img;
        for (int x : hp) img.insert(f.op_map[x]);
        if (img.size() != hp.size()) return false;
      }
      int k = n - 1;
      while (k >= 0 && dom[k] == nc - 1) dom[k--] = 0;
      if (k < 0) break;
      ++dom[k];
    }
  }
  for (int qc = 0; qc < q.color_count(); ++qc) {
    bool hit = false;
    for (int c = 0; c < nc && !hit; ++c)
      for (int u : q.hom({f.color_map[c]}, qc))
        if (is_invertible(q, u)) hit = true;
    if (!hit) return false;
  }
  return true;
}

OperadFunctor collapse_functor(const OperadPtr& as, const OperadPtr& comm) {
  OperadFunctor f{as, comm, {0}, {}};
  for (int x = 0; x < as->size(); ++x) {
    const auto& h = comm->hom(std::vector<int>(as->arity(x), 0), 0);
    f.op_map.push_back(h.empty() ? -1 : h[0]);
  }
  return f;
}

TransferResult transfer_algebra(const OperadFunctor& f, const std::vector<int>& iso) {
  const auto& p = *f.source;
  const auto& e = *f.target;
  int nc = p.color_count();
  if (static_cast<int>(iso.size()) != nc) throw OperadError(OperadError::Kind::Invalid, "one isomorphism per color is required");
  std::vector<int> inv(nc), qcol(nc);
  for (int c = 0; c < nc; ++c) {
    int u = iso[c];
    if (e.arity(u) != 1 || e.op(u).dom[0] != f.color_map[c] || !is_invertible(e, u, &inv[c]))
      throw OperadError(OperadError::Kind::NotIso, "family member for color " + p.colors()[c] + " is not an isomorphism");
    qcol[c] = e.op(u).cod;
  }
  TransferResult r;
  r.g = {f.source, f.target, qcol, std::vector<int>(p.size(), -1)};
  for (int x = 0; x < p.size(); ++x) {
    int top = e.compose(iso[p.op(x).cod], 0, f.op_map[x]);
    std::vector<int> invs;
    for (int c : p.op(x).dom) invs.push_back(inv[c]);
    int gx = top < 0 ? -1 : e.compose_full(top, invs);
    if (gx < 0) throw OperadError(OperadError::Kind::BoundExceeded, "transfer leaves the tabulated range");
    r.g.op_map[x] = gx;
  }
  r.functor_ok = validate_functor(r.g);
  r.natural = true;
  r.unique = true;
  for (int x = 0; x < p.size(); ++x) {
    int lhs = e.compose(iso[p.op(x).cod], 0, f.op_map[x]);
    std::vector<int> fs;
    for (int c : p.op(x).dom) fs.push_back(iso[c]);
    if (e.compose_full(r.g.op_map[x], fs) != lhs) r.natural = false;
    int solutions = 0;
    for (int h : e.hom(mapped(qcol, p.op(x).dom), qcol[p.op(x).cod]))
      if (e.compose_full(h, fs) == lhs) ++solutions;
    if (solutions != 1) r.unique = false;
  }
  return r;
}

}  // namespace dendro
