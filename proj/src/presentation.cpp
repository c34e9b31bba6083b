#include "dendro/presentation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace dendro {

size_t TermHash::operator()(const Term& t) const {
  size_t h = std::hash<std::u16string>()(t.s);
  h ^= static_cast<size_t>(t.cod) * 0x9e3779b97f4a7c15ULL;
  for (int c : t.dom) h = h * 31 + static_cast<size_t>(c);
  return h;
}

int Presentation::color_index(const std::string& c) const {
  auto it = std::find(colors.begin(), colors.end(), c);
  return it == colors.end() ? -1 : static_cast<int>(it - colors.begin());
}

int Presentation::generator_index(const std::string& g) const {
  for (int i = 0; i < static_cast<int>(generators.size()); ++i)
    if (generators[i].name == g) return i;
  return -1;
}

namespace {

bool is_var(char16_t c) { return c >= kVar; }

int sym_arity(const Presentation& p, char16_t c) {
  return is_var(c) ? 0 : static_cast<int>(p.generators[c].dom.size());
}

// end (exclusive) of the subterm starting at pos
size_t span_end(const Presentation& p, const std::u16string& s, size_t pos) {
  int need = 1;
  size_t k = pos;
  while (need > 0) {
    need += sym_arity(p, s[k]) - 1;
    ++k;
  }
  return k;
}

int color_at(const Presentation& p, const Term& t, size_t pos) {
  char16_t c = t.s[pos];
  return is_var(c) ? t.dom[c - kVar] : p.generators[c].cod;
}

}  // namespace

void validate_presentation(const Presentation& p) {
  int nc = static_cast<int>(p.colors.size());
  for (size_t i = 0; i < p.generators.size(); ++i) {
    const auto& g = p.generators[i];
    if (g.cod < 0 || g.cod >= nc) throw std::invalid_argument("generator " + g.name + " has a bad color");
    for (int c : g.dom)
      if (c < 0 || c >= nc) throw std::invalid_argument("generator " + g.name + " has a bad color");
    for (size_t j = 0; j < i; ++j)
      if (p.generators[j].name == g.name) throw std::invalid_argument("duplicate generator " + g.name);
  }
  auto check_term = [&](const Term& t) {
    std::vector<int> seen(t.dom.size(), 0);
    std::function<int(size_t&)> walk = [&](size_t& k) -> int {
      char16_t c = t.s.at(k++);
      if (is_var(c)) {
        int v = c - kVar;
        if (v >= static_cast<int>(t.dom.size()) || seen[v]++) throw std::invalid_argument("variable used twice or out of range");
        return t.dom[v];
      }
      if (c >= p.generators.size()) throw std::invalid_argument("unknown generator in term");
      const auto& g = p.generators[c];
      for (int d : g.dom)
        if (walk(k) != d) throw std::invalid_argument("color mismatch in term");
      return g.cod;
    };
    size_t k = 0;
    if (walk(k) != t.cod || k != t.s.size()) throw std::invalid_argument("malformed term");
    for (int s : seen)
      if (s != 1) throw std::invalid_argument("variable missing from term");
  };
  for (const auto& [l, r] : p.relations) {
    check_term(l);
    check_term(r);
    if (l.dom != r.dom || l.cod != r.cod) throw std::invalid_argument("relation sides have different profiles");
  }
}

int term_size(const Term& t) {
  int n = 0;
  for (char16_t c : t.s)
    if (!is_var(c)) ++n;
  return n;
}

Term var_term(int color) { return Term{std::u16string(1, kVar), {color}, color}; }

Term generator_term(const Presentation& p, int g) {
  const auto& gen = p.generators[g];
  Term t{std::u16string(1, static_cast<char16_t>(g)), gen.dom, gen.cod};
  for (size_t k = 0; k < gen.dom.size(); ++k) t.s.push_back(static_cast<char16_t>(kVar + k));
  return t;
}

Term apply(const Presentation& p, int g, const std::vector<Term>& args) {
  const auto& gen = p.generators[g];
  if (args.size() != gen.dom.size()) throw std::invalid_argument("wrong number of arguments for " + gen.name);
  Term t{std::u16string(1, static_cast<char16_t>(g)), {}, gen.cod};
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i].cod != gen.dom[i]) throw std::invalid_argument("argument color mismatch for " + gen.name);
    int off = static_cast<int>(t.dom.size());
    for (char16_t c : args[i].s) t.s.push_back(is_var(c) ? static_cast<char16_t>(c + off) : c);
    t.dom.insert(t.dom.end(), args[i].dom.begin(), args[i].dom.end());
  }
  return t;
}

Term substitute(const Term& f, int i, const Term& g) {
  Term t{{}, {}, f.cod};
  int m = g.arity();
  for (char16_t c : f.s) {
    if (!is_var(c)) {
      t.s.push_back(c);
      continue;
    }
    int v = c - kVar;
    if (v < i)
      t.s.push_back(c);
    else if (v > i)
      t.s.push_back(static_cast<char16_t>(c + m - 1));
    else
      for (char16_t d : g.s) t.s.push_back(is_var(d) ? static_cast<char16_t>(d + i) : d);
  }
  t.dom.assign(f.dom.begin(), f.dom.begin() + i);
  t.dom.insert(t.dom.end(), g.dom.begin(), g.dom.end());
  t.dom.insert(t.dom.end(), f.dom.begin() + i + 1, f.dom.end());
  return t;
}

Term relabel(const Term& t, const Perm& s) {
  Perm inv = inverse(s);
  Term out{{}, std::vector<int>(t.dom.size()), t.cod};
  for (char16_t c : t.s) out.s.push_back(is_var(c) ? static_cast<char16_t>(kVar + inv[c - kVar]) : c);
  for (size_t k = 0; k < s.size(); ++k) out.dom[k] = t.dom[s[k]];
  return out;
}

std::string to_string(const Presentation& p, const Term& t) {
  std::string out;
  size_t k = 0;
  std::function<void()> walk = [&]() {
    char16_t c = t.s[k++];
    if (is_var(c)) {
      out += "x" + std::to_string(c - kVar);
      return;
    }
    const auto& g = p.generators[c];
    out += g.name;
    if (g.dom.empty()) return;
    out += "(";
    for (size_t i = 0; i < g.dom.size(); ++i) {
      if (i) out += ",";
      walk();
    }
    out += ")";
  };
  walk();
  return out;
}

Term parse_term(const Presentation& p, const std::string& text, int color_hint) {
  size_t k = 0;
  std::map<int, int> var_color;
  Term t;
  auto skip = [&]() {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  };
  auto ident = [&]() {
    skip();
    size_t b = k;
    while (k < text.size() && text[k] != '(' && text[k] != ')' && text[k] != ',' &&
           !std::isspace(static_cast<unsigned char>(text[k])))
      ++k;
    if (b == k) throw std::invalid_argument("expected a symbol in term " + text);
    return text.substr(b, k - b);
  };
  std::function<int(int)> walk = [&](int expected) -> int {
    std::string name = ident();
    int g = p.generator_index(name);
    if (g < 0) {
      if (name.size() < 2 || name[0] != 'x' || !std::all_of(name.begin() + 1, name.end(), ::isdigit))
        throw std::invalid_argument("unknown symbol " + name);
      int v = std::stoi(name.substr(1));
      if (expected < 0) throw std::invalid_argument("cannot infer the color of variable " + name);
      if (var_color.count(v)) throw std::invalid_argument("variable " + name + " used twice");
      var_color[v] = expected;
      t.s.push_back(static_cast<char16_t>(kVar + v));
      return expected;
    }
    const auto& gen = p.generators[g];
    if (expected >= 0 && gen.cod != expected) throw std::invalid_argument("color mismatch at " + name);
    t.s.push_back(static_cast<char16_t>(g));
    skip();
    if (gen.dom.empty()) {
      if (k < text.size() && text[k] == '(') {
        ++k;
        skip();
        if (k >= text.size() || text[k] != ')') throw std::invalid_argument("nullary generator applied to arguments");
        ++k;
      }
      return gen.cod;
    }
    if (k >= text.size() || text[k] != '(') throw std::invalid_argument("expected ( after " + name);
    ++k;
    for (size_t i = 0; i < gen.dom.size(); ++i) {
      walk(gen.dom[i]);
      skip();
      char want = i + 1 < gen.dom.size() ? ',' : ')';
      if (k >= text.size() || text[k] != want) throw std::invalid_argument("malformed arguments of " + name);
      ++k;
    }
    return gen.cod;
  };
  t.cod = walk(color_hint);
  skip();
  if (k != text.size()) throw std::invalid_argument("trailing text in term " + text);
  int n = static_cast<int>(var_color.size());
  for (int v = 0; v < n; ++v) {
    if (!var_color.count(v)) throw std::invalid_argument("variables must be numbered from x0");
    t.dom.push_back(var_color[v]);
  }
  return t;
}

namespace {

// match pattern l at position pos of t; fills binding spans per pattern variable
bool match(const Presentation& p, const Term& l, const Term& t, size_t pos, std::vector<std::pair<size_t, size_t>>& bind,
           size_t& end) {
  size_t k = pos;
  for (char16_t c : l.s) {
    if (k >= t.s.size()) return false;
    if (is_var(c)) {
      int v = c - kVar;
      if (color_at(p, t, k) != l.dom[v]) return false;
      size_t e = span_end(p, t.s, k);
      bind[v] = {k, e};
      k = e;
    } else {
      if (t.s[k] != c) return false;
      ++k;
    }
  }
  end = k;
  return true;
}

}  // namespace

void rewrites(const Presentation& p, const Term& t, int max_size, std::vector<Term>& out, bool* pruned) {
  int size = term_size(t);
  for (const auto& rel : p.relations) {
    for (int dir = 0; dir < 2; ++dir) {
      const Term& l = dir == 0 ? rel.first : rel.second;
      const Term& r = dir == 0 ? rel.second : rel.first;
      int delta = term_size(r) - term_size(l);
      std::vector<std::pair<size_t, size_t>> bind(l.dom.size());
      for (size_t pos = 0; pos < t.s.size(); ++pos) {
        size_t end;
        if (!match(p, l, t, pos, bind, end)) continue;
        if (size + delta > max_size) {
          if (pruned) *pruned = true;
          continue;
        }
        Term n{t.s.substr(0, pos), t.dom, t.cod};
        for (char16_t c : r.s) {
          if (is_var(c)) {
            auto [b, e] = bind[c - kVar];
            n.s.append(t.s, b, e - b);
          } else {
            n.s.push_back(c);
          }
        }
        n.s.append(t.s, end, std::u16string::npos);
        out.push_back(std::move(n));
      }
    }
  }
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

Closure term_closure(const Presentation& p, const Term& a, const Budget& budget) {
  Closure c;
  std::deque<Term> work{a};
  c.terms.insert(a);
  std::vector<Term> next;
  while (!work.empty()) {
    Term t = std::move(work.front());
    work.pop_front();
    next.clear();
    rewrites(p, t, budget.max_size, next, &c.pruned);
    for (auto& n : next) {
      if (c.terms.insert(n).second) {
        if (static_cast<long>(c.terms.size()) > budget.max_visited) {
          c.capped = true;
          return c;
        }
        work.push_back(std::move(n));
      }
    }
  }
  c.saturated = !c.pruned;
  return c;
}

Verdict terms_equal(const Presentation& p, const Term& a, const Term& b, const Budget& budget) {
  if (a == b) return Verdict::Yes;
  if (a.dom != b.dom || a.cod != b.cod) return Verdict::No;
  struct Side {
    std::unordered_set<Term, TermHash> seen;
    std::vector<Term> frontier;
    bool pruned = false;
  };
  Side sa, sb;
  sa.seen.insert(a);
  sa.frontier.push_back(a);
  sb.seen.insert(b);
  sb.frontier.push_back(b);
  std::vector<Term> next;
  while (true) {
    if (sa.frontier.empty()) return sa.pruned ? Verdict::Unknown : Verdict::No;
    if (sb.frontier.empty()) return sb.pruned ? Verdict::Unknown : Verdict::No;
    Side& x = sa.frontier.size() <= sb.frontier.size() ? sa : sb;
    Side& y = &x == &sa ? sb : sa;
    std::vector<Term> level;
    for (const auto& t : x.frontier) {
      next.clear();
      rewrites(p, t, budget.max_size, next, &x.pruned);
      for (auto& n : next) {
        if (y.seen.count(n)) return Verdict::Yes;
        if (x.seen.insert(n).second) level.push_back(std::move(n));
      }
      if (static_cast<long>(sa.seen.size() + sb.seen.size()) > budget.max_visited) return Verdict::Unknown;
    }
    x.frontier = std::move(level);
  }
}

std::vector<Term> enumerate_terms(const Presentation& p, int max_size, int max_arity) {
  using Skel = std::pair<std::u16string, std::vector<int>>;  // slots are kVar, with colors
  std::map<std::pair<int, int>, std::vector<Skel>> memo;
  std::function<const std::vector<Skel>&(int, int)> skel = [&](int c, int k) -> const std::vector<Skel>& {
    auto key = std::make_pair(c, k);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Skel> out;
    if (k == 0) {
      out.push_back({std::u16string(1, kVar), {c}});
    } else {
      for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
        const auto& gen = p.generators[g];
        if (gen.cod != c) continue;
        int n = static_cast<int>(gen.dom.size());
        std::function<void(int, int, Skel&)> rec = [&](int i, int left, Skel& acc) {
          if (i == n) {
            if (left == 0) out.push_back(acc);
            return;
          }
          for (int ki = 0; ki <= left; ++ki) {
            for (const auto& sub : skel(gen.dom[i], ki)) {
              if (static_cast<int>(acc.second.size() + sub.second.size()) > max_arity + 4 * max_size) continue;
              size_t ls = acc.first.size(), lc = acc.second.size();
              acc.first += sub.first;
              acc.second.insert(acc.second.end(), sub.second.begin(), sub.second.end());
              rec(i + 1, left - ki, acc);
              acc.first.resize(ls);
              acc.second.resize(lc);
            }
          }
        };
        Skel acc{std::u16string(1, static_cast<char16_t>(g)), {}};
        rec(0, k - 1, acc);
      }
    }
    return memo[key] = std::move(out);
  };
  std::vector<Term> terms;
  for (int c = 0; c < static_cast<int>(p.colors.size()); ++c)
    for (int k = 0; k <= max_size; ++k)
      for (const auto& [s, cols] : skel(c, k)) {
        int n = static_cast<int>(cols.size());
        if (n > max_arity) continue;
        std::vector<Perm> labels = p.planar ? std::vector<Perm>{identity_perm(n)} : all_perms(n);
        for (const auto& lab : labels) {
          Term t{s, std::vector<int>(n), c};
          int slot = 0;
          for (auto& ch : t.s)
            if (ch == kVar) {
              t.dom[lab[slot]] = cols[slot];
              ch = static_cast<char16_t>(kVar + lab[slot]);
              ++slot;
            }
          terms.push_back(std::move(t));
        }
      }
  return terms;
}

TabulateResult tabulate(const Presentation& p, int arity_bound, int size_bound) {
  validate_presentation(p);
  TabulateResult res;
  auto terms = enumerate_terms(p, size_bound + 1, arity_bound);
  std::unordered_map<Term, int, TermHash> index;
  for (int i = 0; i < static_cast<int>(terms.size()); ++i) index.emplace(terms[i], i);
  std::vector<int> uf(terms.size());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) { return uf[x] == x ? x : uf[x] = find(uf[x]); };
  std::vector<Term> next;
  for (int i = 0; i < static_cast<int>(terms.size()); ++i) {
    next.clear();
    rewrites(p, terms[i], size_bound + 1, next);
    for (const auto& n : next) {
      auto it = index.find(n);
      if (it == index.end()) continue;
      int a = find(i), b = find(it->second);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  }
  // representative: the smallest member (terms are generated by size)
  std::map<int, int> rep_of_root;
  for (int i = 0; i < static_cast<int>(terms.size()); ++i) {
    int r = find(i);
    auto it = rep_of_root.find(r);
    if (it == rep_of_root.end() || terms[i] < terms[it->second]) rep_of_root[r] = i;
  }
  std::vector<int> reps;
  for (auto& [r, i] : rep_of_root) {
    if (term_size(terms[i]) > size_bound) {
      res.reason = "a class has no member of size <= " + std::to_string(size_bound) + ": " + to_string(p, terms[i]);
      return res;
    }
    reps.push_back(i);
  }
  std::sort(reps.begin(), reps.end(), [&](int a, int b) { return terms[a] < terms[b]; });
  TabulatedOperad op(p.colors, arity_bound, p.planar, false);
  std::unordered_map<int, int> op_of_root;
  for (int i : reps) {
    int id = op.add_op({terms[i].dom, terms[i].cod, to_string(p, terms[i])});
    op_of_root[find(i)] = id;
    res.representatives.push_back(terms[i]);
  }
  auto class_of = [&](const Term& t) -> int {
    auto it = index.find(t);
    if (it != index.end()) return op_of_root.at(find(it->second));
    // reduce by a bounded search for a tabulated member
    Budget b{term_size(t) + 1, 20000};
    std::deque<Term> work{t};
    std::unordered_set<Term, TermHash> seen{t};
    while (!work.empty()) {
      Term x = std::move(work.front());
      work.pop_front();
      std::vector<Term> nx;
      rewrites(p, x, b.max_size, nx);
      for (auto& n : nx) {
        auto jt = index.find(n);
        if (jt != index.end()) return op_of_root.at(find(jt->second));
        if (static_cast<long>(seen.size()) < b.max_visited && seen.insert(n).second) work.push_back(std::move(n));
      }
    }
    return -1;
  };
  for (int c = 0; c < static_cast<int>(p.colors.size()); ++c) op.set_identity(c, class_of(var_term(c)));
  for (int f = 0; f < op.size(); ++f) {
    const Term& tf = res.representatives[f];
    for (int i = 0; i < tf.arity(); ++i)
      for (int g = 0; g < op.size(); ++g) {
        const Term& tg = res.representatives[g];
        if (tg.cod != tf.dom[i] || tf.arity() + tg.arity() - 1 > arity_bound) continue;
        int h = class_of(substitute(tf, i, tg));
        if (h < 0) {
          res.reason = "composite outside the tabulated range: " + to_string(p, substitute(tf, i, tg));
          return res;
        }
        op.set_compose(f, i, g, h);
      }
    if (p.planar) {
      op.set_act(f, identity_perm(tf.arity()), f);
    } else {
      for (const auto& s : all_perms(tf.arity())) op.set_act(f, s, class_of(relabel(tf, s)));
    }
  }
  op.name = "tabulated";
  res.operad = std::move(op);
  res.status = Verdict::Yes;
  return res;
}

// ---- standard presentations ----

namespace {

Presentation one_color_monoid(bool commutative) {
  Presentation p;
  p.colors = {"*"};
  p.generators = {{"mu", {0, 0}, 0}, {"e", {}, 0}};
  auto rel = [&](const std::string& a, const std::string& b) {
    p.relations.push_back({parse_term(p, a, 0), parse_term(p, b, 0)});
  };
  rel("mu(mu(x0,x1),x2)", "mu(x0,mu(x1,x2))");
  rel("mu(e,x0)", "x0");
  rel("mu(x0,e)", "x0");
  if (commutative) rel("mu(x0,x1)", "mu(x1,x0)");
  return p;
}

}  // namespace

Presentation as_presentation() { return one_color_monoid(false); }
Presentation comm_presentation() { return one_color_monoid(true); }

Presentation free_binary_presentation(bool planar) {
  Presentation p;
  p.colors = {"*"};
  p.generators = {{"mu", {0, 0}, 0}};
  p.planar = planar;
  return p;
}

Presentation unit_presentation() {
  Presentation p;
  p.colors = {"*"};
  return p;
}

Presentation tree_presentation(const Tree& t) {
  Presentation p;
  p.colors = t.names();
  for (int v : t.vertices()) p.generators.push_back({"v" + t.name(v), t.inputs(v), v});
  return p;
}

Perm interchange_perm(int n, int m) {
  Perm out(n * m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) out[j * n + i] = i * m + j;
  return out;
}

Presentation bv_tensor_presentation(const Presentation& p, const Presentation& q) {
  Presentation r;
  int np = static_cast<int>(p.colors.size()), nq = static_cast<int>(q.colors.size());
  int gp = static_cast<int>(p.generators.size());
  auto col = [&](int a, int b) { return a * nq + b; };
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < nq; ++b) r.colors.push_back("(" + p.colors[a] + "," + q.colors[b] + ")");
  auto left = [&](int g, int b) { return g * nq + b; };
  auto right = [&](int a, int h) { return gp * nq + h * np + a; };
  for (int g = 0; g < gp; ++g)
    for (int b = 0; b < nq; ++b) {
      const auto& gen = p.generators[g];
      Generator n{gen.name + "@" + q.colors[b], {}, col(gen.cod, b)};
      for (int d : gen.dom) n.dom.push_back(col(d, b));
      r.generators.push_back(n);
    }
  for (int h = 0; h < static_cast<int>(q.generators.size()); ++h)
    for (int a = 0; a < np; ++a) {
      const auto& gen = q.generators[h];
      Generator n{p.colors[a] + "@" + gen.name, {}, col(a, gen.cod)};
      for (int d : gen.dom) n.dom.push_back(col(a, d));
      r.generators.push_back(n);
    }
  auto map_term = [&](const Term& t, bool from_p, int fixed) {
    Term o{{}, {}, from_p ? col(t.cod, fixed) : col(fixed, t.cod)};
    for (char16_t c : t.s) {
      if (is_var(c))
        o.s.push_back(c);
      else
        o.s.push_back(static_cast<char16_t>(from_p ? left(c, fixed) : right(fixed, c)));
    }
    for (int d : t.dom) o.dom.push_back(from_p ? col(d, fixed) : col(fixed, d));
    return o;
  };
  for (const auto& [l, rr] : p.relations)
    for (int b = 0; b < nq; ++b) r.relations.push_back({map_term(l, true, b), map_term(rr, true, b)});
  for (const auto& [l, rr] : q.relations)
    for (int a = 0; a < np; ++a) r.relations.push_back({map_term(l, false, a), map_term(rr, false, a)});
  for (int g = 0; g < gp; ++g)
    for (int h = 0; h < static_cast<int>(q.generators.size()); ++h) {
      const auto& psi = p.generators[g];
      const auto& phi = q.generators[h];
      int n = static_cast<int>(psi.dom.size()), m = static_cast<int>(phi.dom.size());
      Term lhs{{}, std::vector<int>(n * m), col(psi.cod, phi.cod)};
      lhs.s.push_back(static_cast<char16_t>(left(g, phi.cod)));
      for (int i = 0; i < n; ++i) {
        lhs.s.push_back(static_cast<char16_t>(right(psi.dom[i], h)));
        for (int j = 0; j < m; ++j) {
          lhs.s.push_back(static_cast<char16_t>(kVar + i * m + j));
          lhs.dom[i * m + j] = col(psi.dom[i], phi.dom[j]);
        }
      }
      Term rhs{{}, lhs.dom, lhs.cod};
      rhs.s.push_back(static_cast<char16_t>(right(psi.cod, h)));
      Perm tau = interchange_perm(n, m);
      for (int j = 0; j < m; ++j) {
        rhs.s.push_back(static_cast<char16_t>(left(g, phi.dom[j])));
        for (int i = 0; i < n; ++i) rhs.s.push_back(static_cast<char16_t>(kVar + tau[j * n + i]));
      }
      r.relations.push_back({lhs, rhs});
    }
  return r;
}

bool same_presentation_shape(const Presentation& a, const Presentation& b) {
  if (a.colors.size() != b.colors.size() || a.generators.size() != b.generators.size() ||
      a.relations.size() != b.relations.size() || a.planar != b.planar)
    return false;
  for (size_t g = 0; g < a.generators.size(); ++g)
    if (a.generators[g].dom != b.generators[g].dom || a.generators[g].cod != b.generators[g].cod) return false;
  for (size_t k = 0; k < a.relations.size(); ++k)
    if (!(a.relations[k] == b.relations[k])) return false;
  return true;
}

}  // namespace dendro
