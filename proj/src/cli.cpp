#include "dendro/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "dendro/broad_order.hpp"
#include "dendro/dold_kan.hpp"
#include "dendro/dsets.hpp"
#include "dendro/dtensor.hpp"
#include "dendro/errors.hpp"
#include "dendro/json_io.hpp"
#include "dendro/omega.hpp"
#include "dendro/operads.hpp"
#include "dendro/presentation.hpp"
#include "dendro/wcon.hpp"

namespace dendro {

namespace {

// A verdict that could not be reached within the budget.
struct Undecided : std::runtime_error {
  Json body;
  explicit Undecided(Json b) : std::runtime_error("undecided"), body(std::move(b)) {}
};

struct Output {
  Json json;
  std::string dot;
  std::string text;
};

constexpr int kMaxDsetVertices = 5;
constexpr int kMaxDsetEdges = 9;

int default_bound() {
  const char* v = std::getenv("DENDRO_BOUND");
  if (!v || !*v) return 3;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("DENDRO_BOUND is not an integer: ") + v);
  }
}

Json read_json(const std::string& arg) {
  std::string text = arg;
  auto first = arg.find_first_not_of(" \t\n");
  if (first == std::string::npos || (arg[first] != '{' && arg[first] != '[' && arg[first] != '"')) {
    std::ifstream in(arg);
    if (!in) throw std::invalid_argument("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return Json::parse(text);
}

Tree read_tree(const std::string& arg) { return tree_from_json(read_json(arg)); }

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) out.push_back(std::stoi(part));
  return out;
}

// As, Comm, their non-unital variants, Unit, env:<sizes>, tree:<tree>, or a presentation
OperadPtr resolve_operad(const std::string& name, int arity, int size) {
  auto share = [](TabulatedOperad p) { return std::make_shared<const TabulatedOperad>(std::move(p)); };
  if (name == "As") return share(make_as(arity));
  if (name == "As-nonunital") return share(make_as(arity, false));
  if (name == "Comm") return share(make_comm(arity));
  if (name == "Comm-nonunital") return share(make_comm(arity, false));
  if (name == "Unit") return share(make_unit_operad());
  if (name == "OneOp") return share(one_op_per_arity(arity, true));
  if (name.rfind("env:", 0) == 0) return share(environment_operad(parse_ints(name.substr(4)), arity));
  if (name.rfind("tree:", 0) == 0) return share(free_operad_on_tree(read_tree(name.substr(5))));
  auto r = tabulate(presentation_from_json(read_json(name)), arity, size);
  if (r.status != Verdict::Yes)
    throw Undecided(Json{{"error", "Unknown"}, {"message", r.reason},
                         {"within_bound", "arity<=" + std::to_string(arity) + ",size<=" + std::to_string(size)}});
  return share(std::move(r.operad));
}

Presentation resolve_presentation(const std::string& name) {
  if (name == "As") return as_presentation();
  if (name == "Comm") return comm_presentation();
  if (name == "Unit") return unit_presentation();
  if (name == "FreeBinary") return free_binary_presentation();
  if (name.rfind("tree:", 0) == 0) return tree_presentation(read_tree(name.substr(5)));
  return presentation_from_json(read_json(name));
}

void check_dset_bounds(int v, int e) {
  if (v < 0 || e < -1) throw std::invalid_argument("bounds must be nonnegative");
  if (v > kMaxDsetVertices || e > kMaxDsetEdges)
    throw ScaleLimit("dendroidal sets are computed for vertices <= " + std::to_string(kMaxDsetVertices) +
                     " and edges <= " + std::to_string(kMaxDsetEdges));
}

Json face_json(const Tree& t, const ElementaryFace& f) {
  Json edges = Json::array(), leaves = Json::array();
  for (int e : f.face.edges) edges.push_back(t.name(e));
  for (int e : f.face.leaves) leaves.push_back(t.name(e));
  return Json{{"kind", to_string(f.kind)}, {"edge", t.name(f.edge)}, {"witness", f.witness(t)},
              {"edges", edges}, {"leaves", leaves}};
}

std::string text_of(const Json& j) {
  std::ostringstream os;
  if (j.is_object())
    for (const auto& [k, v] : j.items()) os << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  else
    os << j.dump() << "\n";
  return os.str();
}

// the sources a dendroidal set can be built from
struct DSetSource {
  std::string operad;
  std::string tree;
  std::string input;
  std::string s, t;
  int vertices = 3;
  int edges = -1;
  int arity = -1;
  int size = 4;
};

void add_dset_options(CLI::App* c, DSetSource& src) {
  c->add_option("--operad", src.operad, "nerve of an operad: As, Comm, As-nonunital, Comm-nonunital, Unit, env:2,2, tree:T.json or a presentation");
  c->add_option("--tree", src.tree, "representable on a tree");
  c->add_option("--input", src.input, "dendroidal set JSON");
  c->add_option("--s", src.s, "first tree of a tensor of representables");
  c->add_option("--t", src.t, "second tree of a tensor of representables");
  c->add_option("--vertices", src.vertices, "vertex bound of the shapes");
  c->add_option("--edges", src.edges, "edge bound of the shapes");
  c->add_option("--arity", src.arity, "arity bound of the operad tables");
  c->add_option("--size", src.size, "term size bound when tabulating a presentation");
}

DendroidalSet build_dset(const DSetSource& src) {
  int given = !src.operad.empty() + !src.tree.empty() + !src.input.empty() + !src.s.empty();
  if (given != 1) throw std::invalid_argument("give exactly one of --operad, --tree, --input, --s/--t");
  if (!src.input.empty()) {
    auto x = dset_from_json(read_json(src.input));
    auto check = validate_presheaf(x);
    if (!check.ok) throw std::invalid_argument("not a presheaf: " + check.failure);
    return x;
  }
  check_dset_bounds(src.vertices, src.edges);
  auto c = std::make_shared<const ShapeCatalog>(src.vertices, src.edges);
  if (!src.operad.empty()) {
    int arity = src.arity < 0 ? c->max_arity() : src.arity;
    return nerve(resolve_operad(src.operad, arity, src.size), c);
  }
  if (!src.tree.empty()) return representable(read_tree(src.tree), c);
  if (src.t.empty()) throw std::invalid_argument("--s needs --t");
  return tensor_representables(read_tree(src.s), read_tree(src.t), c);
}

Json counts_json(const DendroidalSet& x) {
  Json shapes = Json::array();
  for (int s = 0; s < x.catalog().size(); ++s)
    shapes.push_back(Json{{"shape", x.catalog().code(s)}, {"count", x.count(s)}});
  return shapes;
}

Json kan_json(const KanReport& r) {
  return Json{{"holds", r.holds}, {"horns", r.horns}, {"fillers", r.fillers}, {"witness", r.witness},
              {"within_bound", r.within_bound}};
}

// a random functor into a random environment and a random family of isomorphisms
Json run_transfer(const std::string& source, const std::vector<int>& sizes, int arity, unsigned seed) {
  std::mt19937 rng(seed);
  auto p = resolve_operad(source, arity, 4);
  auto env = std::make_shared<const TabulatedOperad>(environment_operad(sizes, arity));
  FunctorOptions opt;
  opt.limit = 1;
  opt.rng = &rng;
  auto fs = enumerate_functors(p, env, opt);
  if (fs.empty()) return Json{{"functor_found", false}};
  const auto& f = fs[0];
  std::vector<int> iso;
  for (int c = 0; c < p->color_count(); ++c) {
    std::vector<int> cands;
    for (int u : env->ops_of_arity(1))
      if (env->op(u).dom[0] == f.color_map[c] && is_invertible(*env, u)) cands.push_back(u);
    iso.push_back(cands[rng() % cands.size()]);
  }
  auto r = transfer_algebra(f, iso);
  Json isos = Json::array();
  for (int u : iso) isos.push_back(env->op(u).label);
  return Json{{"functor_found", true}, {"environment", env->colors()}, {"isomorphisms", isos},
              {"functor_ok", r.functor_ok}, {"natural", r.natural}, {"unique", r.unique},
              {"color_map", r.g.color_map}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"dendro: trees, operads and dendroidal sets"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format;
  app.add_option("--format", format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
  std::function<Output()> action;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help) {
    auto* c = group->add_subcommand(name, help);
    return c;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };

  // ---- tree ----
  std::string tree_arg;
  int vertices = -1, edges = -1, leaves = -1, n = 0;
  bool planar = false, reduced = false;
  auto* tree = group("tree", "rooted trees");
  auto* tv = leaf(tree, "validate", "check a tree and report its invariants");
  tv->add_option("--tree", tree_arg, "tree JSON (file or inline)")->required();
  tv->callback([&] {
    action = [&] {
      Tree t = read_tree(tree_arg);
      auto b = to_broad_poset(t);
      Json j{{"valid", true},
             {"edges", t.size()},
             {"vertices", t.vertex_count()},
             {"leaves", static_cast<int>(t.leaves().size())},
             {"code", canonical_code(t)},
             {"broad_poset", broad_to_json(b)},
             {"dendroidally_ordered", is_dendroidally_ordered(b)}};
      return Output{j, to_dot(t), canonical_code(t) + "\n"};
    };
  });
  auto* tr = leaf(tree, "render", "draw a tree");
  tr->add_option("--tree", tree_arg, "tree JSON (file or inline)")->required();
  tr->callback([&] {
    if (format.empty()) format = "dot";
    action = [&] {
      Tree t = read_tree(tree_arg);
      return Output{tree_to_json(t), to_dot(t), canonical_code(t) + "\n"};
    };
  });
  auto* te = leaf(tree, "enumerate", "list trees up to isomorphism");
  te->add_option("--vertices", vertices, "vertex bound (default DENDRO_BOUND or 3)");
  te->add_option("--edges", edges, "edge bound (default 2 * vertices + 1)");
  te->add_option("--leaves", leaves, "exact number of leaves");
  te->add_flag("--planar", planar, "planar trees");
  te->add_flag("--reduced", reduced, "every vertex has at least two inputs");
  te->callback([&] {
    action = [&] {
      EnumOptions opt;
      opt.max_vertices = vertices < 0 ? default_bound() : vertices;
      if (opt.max_vertices > 7) throw ScaleLimit("tree enumeration is limited to 7 vertices");
      opt.max_edges = edges < 0 && leaves < 0 && !reduced ? 2 * opt.max_vertices + 1 : edges;
      opt.leaves = leaves;
      opt.planar = planar;
      opt.reduced = reduced;
      std::map<std::string, Tree> found;
      for (const auto& t : enumerate_trees(opt)) {
        auto sf = standard_form(t, planar);
        found.emplace(canonical_code(sf.tree, planar), sf.tree);
      }
      Json trees = Json::array();
      std::string text;
      for (const auto& [code, t] : found) {
        trees.push_back(Json{{"code", code}, {"tree", tree_to_json(t)}});
        text += code + "\n";
      }
      std::string bound = "vertices<=" + std::to_string(opt.max_vertices);
      if (opt.max_edges >= 0) bound += ",edges<=" + std::to_string(opt.max_edges);
      if (opt.leaves >= 0) bound += ",leaves=" + std::to_string(opt.leaves);
      return Output{Json{{"count", found.size()}, {"within_bound", bound}, {"trees", trees}}, "", text};
    };
  });

  // ---- omega ----
  std::string source_arg, target_arg, map_arg;
  auto* om = group("omega", "morphisms of trees");
  auto* oh = leaf(om, "homs", "all morphisms between two trees");
  oh->add_option("--source", source_arg, "source tree")->required();
  oh->add_option("--target", target_arg, "target tree")->required();
  oh->callback([&] {
    action = [&] {
      Tree s = read_tree(source_arg), t = read_tree(target_arg);
      Json maps = Json::array();
      std::string text;
      for (const auto& m : hom_maps(s, t)) {
        auto c = classify(s, t, m);
        maps.push_back(Json{{"edge_map", edge_map_to_json(s, t, m)}, {"kind", to_string(c.kind)}});
        text += edge_map_to_json(s, t, m).dump() + " " + to_string(c.kind) + "\n";
      }
      return Output{Json{{"count", maps.size()}, {"maps", maps}}, "", text};
    };
  });
  auto* oc = leaf(om, "classify", "classify a morphism");
  oc->add_option("--map", map_arg, "morphism JSON")->required();
  oc->callback([&] {
    action = [&] {
      auto f = morphism_from_json(read_json(map_arg));
      auto c = classify(f);
      Json j{{"kind", to_string(c.kind)}, {"witness", c.witness}};
      return Output{j, "", std::string(to_string(c.kind)) + " " + c.witness + "\n"};
    };
  });
  auto* of = leaf(om, "factorize", "degeneracies, isomorphism and faces of a morphism");
  of->add_option("--map", map_arg, "morphism JSON")->required();
  of->callback([&] {
    action = [&] {
      auto f = morphism_from_json(read_json(map_arg));
      const Tree& s = *f.source;
      const Tree& t = *f.target;
      auto fz = factorize(s, t, f.map);
      Json collapsed = Json::array();
      for (int e : fz.collapsed) collapsed.push_back(s.name(e));
      Json chain = Json::array();
      std::ostringstream text;
      text << "delta: collapse";
      for (int e : fz.collapsed) text << " " << s.name(e);
      text << " -> " << canonical_code(fz.s_prime) << "\n";
      text << "pi: " << edge_map_to_json(fz.s_prime, fz.face, fz.pi).dump() << "\n";
      for (const auto& step : fz.chain) {
        chain.push_back(Json{{"tree", canonical_code(step.tree)}, {"face", face_json(step.tree, step.face)}});
        text << "phi: " << to_string(step.face.kind) << " face " << step.face.witness(step.tree) << " of "
             << canonical_code(step.tree) << "\n";
      }
      bool ok = fz.recompose(s, t) == f.map;
      text << "recomposes: " << (ok ? "true" : "false") << "\n";
      Json j{{"degeneracies", collapsed},
             {"s_prime", tree_to_json(fz.s_prime)},
             {"delta", edge_map_to_json(s, fz.s_prime, fz.delta)},
             {"pi", edge_map_to_json(fz.s_prime, fz.face, fz.pi)},
             {"face", tree_to_json(fz.face)},
             {"faces", chain},
             {"recomposes", ok}};
      return Output{j, "", text.str()};
    };
  });
  auto* ofa = leaf(om, "faces", "elementary and codimension 2 faces of a tree");
  ofa->add_option("--tree", tree_arg, "tree JSON")->required();
  ofa->callback([&] {
    action = [&] {
      Tree t = read_tree(tree_arg);
      Json fs = Json::array();
      std::string text;
      for (const auto& f : faces(t)) {
        fs.push_back(face_json(t, f));
        text += std::string(to_string(f.kind)) + " " + f.witness(t) + "\n";
      }
      Json sq = Json::array();
      for (const auto& d : subfaces2(t)) {
        Json e = Json::array();
        for (int x : d.beta.edges) e.push_back(t.name(x));
        sq.push_back(Json{{"edges", e}, {"factorizations", d.ways.size()}});
      }
      return Output{Json{{"faces", fs}, {"codimension2", sq}}, "", text};
    };
  });

  // ---- operad ----
  std::string pres_arg, p_arg, q_arg, lhs, rhs, sizes_arg = "2,2";
  int arity = 3, size = 4, max_size = 6, transfer_arity = 2;
  long max_visited = 2000000, limit = 100;
  unsigned seed = 1;
  auto* op = group("operad", "operads, presentations and functors");
  auto* ot = leaf(op, "tabulate", "tabulate a presented operad");
  ot->add_option("--presentation", pres_arg, "presentation JSON or As, Comm, Unit, FreeBinary, tree:T")->required();
  ot->add_option("--arity", arity, "arity bound");
  ot->add_option("--size", size, "term size bound");
  ot->callback([&] {
    action = [&] {
      auto p = resolve_presentation(pres_arg);
      auto r = tabulate(p, arity, size);
      std::string bound = "arity<=" + std::to_string(arity) + ",size<=" + std::to_string(size);
      Json ops = Json::array();
      std::map<int, int> by_arity;
      for (size_t f = 0; f < r.representatives.size(); ++f) {
        const Term& term = r.representatives[f];
        ops.push_back(Json{{"term", to_string(p, term)}, {"arity", term.arity()}});
        ++by_arity[term.arity()];
      }
      Json counts = Json::object();
      for (auto [a, c] : by_arity) counts[std::to_string(a)] = c;
      Json j{{"status", to_string(r.status)}, {"reason", r.reason}, {"within_bound", bound},
             {"counts_by_arity", counts}, {"operations", ops}};
      if (r.status != Verdict::Yes) throw Undecided(j);
      return Output{j, "", text_of(j)};
    };
  });
  auto* ofn = leaf(op, "functors", "functors between tabulated operads");
  ofn->add_option("--source", p_arg, "source operad")->required();
  ofn->add_option("--target", q_arg, "target operad")->required();
  ofn->add_option("--arity", arity, "arity bound");
  ofn->add_option("--limit", limit, "stop after this many functors");
  ofn->callback([&] {
    action = [&] {
      auto p = resolve_operad(p_arg, arity, size), q = resolve_operad(q_arg, arity, size);
      FunctorOptions opt;
      opt.limit = limit;
      auto fs = enumerate_functors(p, q, opt);
      Json list = Json::array();
      for (const auto& f : fs) {
        Json ops = Json::object();
        for (int x = 0; x < p->size(); ++x) ops[p->op(x).label] = q->op(f.op_map[x]).label;
        list.push_back(Json{{"color_map", f.color_map}, {"op_map", ops}});
      }
      Json j{{"count", fs.size()}, {"complete", limit < 0 || static_cast<long>(fs.size()) < limit},
             {"within_bound", "arity<=" + std::to_string(arity)}, {"functors", list}};
      return Output{j, "", text_of(j)};
    };
  });
  auto* ob = leaf(op, "bv-tensor", "presentation of the tensor product");
  ob->add_option("--p", p_arg, "first presentation")->required();
  ob->add_option("--q", q_arg, "second presentation")->required();
  ob->callback([&] {
    action = [&] {
      auto j = presentation_to_json(bv_tensor_presentation(resolve_presentation(p_arg), resolve_presentation(q_arg)));
      return Output{j, "", j.dump(2) + "\n"};
    };
  });
  auto* oe = leaf(op, "equal", "bounded word problem");
  oe->add_option("--presentation", pres_arg, "presentation")->required();
  oe->add_option("--lhs", lhs, "term")->required();
  oe->add_option("--rhs", rhs, "term")->required();
  oe->add_option("--max-size", max_size, "largest intermediate term size");
  oe->add_option("--max-visited", max_visited, "largest number of visited terms");
  oe->callback([&] {
    action = [&] {
      auto p = resolve_presentation(pres_arg);
      auto term = [&](const std::string& s, int hint) {
        auto f = s.find_first_not_of(" ");
        return f != std::string::npos && s[f] == '{' ? term_from_json(p, Json::parse(s), hint) : parse_term(p, s, hint);
      };
      Term a = term(lhs, -1);
      Term b = term(rhs, a.cod);
      auto v = terms_equal(p, a, b, Budget{max_size, max_visited});
      Json j{{"verdict", to_string(v)},
             {"within_bound", "size<=" + std::to_string(max_size) + ",visited<=" + std::to_string(max_visited)}};
      if (v == Verdict::Unknown) throw Undecided(j);
      return Output{j, "", std::string(to_string(v)) + "\n"};
    };
  });
  auto* otr = leaf(op, "transfer", "transfer an algebra along isomorphisms");
  otr->add_option("--source", p_arg, "source operad (default Comm)");
  otr->add_option("--sizes", sizes_arg, "set sizes of the environment");
  otr->add_option("--arity", transfer_arity, "arity bound");
  otr->add_option("--seed", seed, "random seed");
  otr->callback([&] {
    action = [&] {
      auto j = run_transfer(p_arg.empty() ? "Comm" : p_arg, parse_ints(sizes_arg), transfer_arity, seed);
      return Output{j, "", text_of(j)};
    };
  });

  // ---- dset ----
  DSetSource src;
  src.vertices = -1;
  std::string shape_arg;
  bool dump = false;
  auto* ds = group("dset", "dendroidal sets");
  auto prep = [&] {
    if (src.vertices < 0) src.vertices = default_bound();
  };
  auto* dn = leaf(ds, "nerve", "dendrices per shape");
  add_dset_options(dn, src);
  dn->add_flag("--dump", dump, "write the whole set in the dendroidal set format");
  dn->callback([&] {
    action = [&] {
      prep();
      auto x = build_dset(src);
      if (dump) return Output{dset_to_json(x), "", ""};
      Json j{{"within_bound", x.catalog().bound_label()}, {"total", x.total()}, {"shapes", counts_json(x)}};
      return Output{j, "", text_of(j)};
    };
  });
  auto* dh = leaf(ds, "horns", "horns of a shape and their fillers");
  add_dset_options(dh, src);
  dh->add_option("--shape", shape_arg, "shape tree")->required();
  dh->callback([&] {
    action = [&] {
      prep();
      auto x = build_dset(src);
      int s = x.catalog().find(read_tree(shape_arg));
      if (s < 0) throw ScaleLimit("shape outside " + x.catalog().bound_label());
      const Tree& t = x.catalog().shape(s);
      Json list = Json::array();
      const auto& fs = x.catalog().faces(s);
      for (int f = 0; f < static_cast<int>(fs.size()); ++f) {
        auto hs = horn_families(x, s, f);
        long filled = 0, unique = 0;
        for (const auto& h : hs) {
          auto fill = fill_horn(x, h);
          filled += !fill.empty();
          unique += fill.size() == 1;
        }
        list.push_back(Json{{"face", fs[f].face.witness(t)}, {"kind", to_string(fs[f].face.kind)},
                            {"families", hs.size()}, {"filled", filled}, {"uniquely_filled", unique}});
      }
      Json j{{"shape", x.catalog().code(s)}, {"within_bound", x.catalog().bound_label()}, {"horns", list}};
      return Output{j, "", text_of(j)};
    };
  });
  auto* dk = leaf(ds, "kan", "inner Kan condition");
  add_dset_options(dk, src);
  dk->callback([&] {
    action = [&] {
      prep();
      auto j = kan_json(inner_kan_report(build_dset(src), false));
      return Output{j, "", text_of(j)};
    };
  });
  auto* dst = leaf(ds, "strict", "unique inner horn fillers");
  add_dset_options(dst, src);
  dst->callback([&] {
    action = [&] {
      prep();
      auto j = kan_json(inner_kan_report(build_dset(src), true));
      return Output{j, "", text_of(j)};
    };
  });
  auto* dno = leaf(ds, "normal", "free automorphism actions");
  add_dset_options(dno, src);
  dno->callback([&] {
    action = [&] {
      prep();
      auto x = build_dset(src);
      std::string w;
      bool ok = is_normal(x, &w);
      Json j{{"normal", ok}, {"witness", w}, {"within_bound", x.catalog().bound_label()}};
      return Output{j, "", text_of(j)};
    };
  });
  auto* dt = leaf(ds, "tau", "presentation of the operad generated by a dendroidal set");
  add_dset_options(dt, src);
  dt->callback([&] {
    action = [&] {
      prep();
      auto j = presentation_to_json(tau_presentation(build_dset(src)));
      return Output{j, "", j.dump(2) + "\n"};
    };
  });
  auto* dsl = leaf(ds, "slice", "the simplicial set on linear trees");
  add_dset_options(dsl, src);
  dsl->callback([&] {
    action = [&] {
      prep();
      auto x = build_dset(src);
      auto up = i_upper(x);
      Json j{{"simplices_by_dim", up.count}, {"inner_kan", simplicial_inner_kan(up)},
             {"within_bound", x.catalog().bound_label()}};
      if (!src.operad.empty()) {
        int a = src.arity < 0 ? x.catalog().max_arity() : src.arity;
        auto cat = j_upper(*resolve_operad(src.operad, a, src.size));
        auto cn = category_nerve(cat, up.dimension());
        j["category_nerve_by_dim"] = cn.count;
      }
      return Output{j, "", text_of(j)};
    };
  });

  // ---- tensor ----
  std::string s_arg, t_arg;
  int tv_bound = 4;
  auto* tn = group("tensor", "tensor products of trees");
  auto* tp = leaf(tn, "percolation", "percolation trees and their poset");
  tp->add_option("--s", s_arg, "first tree")->required();
  tp->add_option("--t", t_arg, "second tree")->required();
  tp->add_option("--max-vertices", tv_bound, "vertex bound for each tree");
  tp->callback([&] {
    action = [&] {
      auto p = percolation_poset(read_tree(s_arg), read_tree(t_arg), tv_bound);
      Json els = Json::array();
      std::string text;
      for (int i = 0; i < static_cast<int>(p.elements.size()); ++i) {
        els.push_back(Json{{"index", i}, {"label", percolation_label(p, i)}, {"tree", tree_to_json(p.elements[i].tree)}});
        text += "T" + std::to_string(i + 1) + " " + percolation_label(p, i) + "\n";
      }
      Json covers = Json::array();
      for (auto [a, b] : p.covers) covers.push_back(Json::array({a, b}));
      Json j{{"count", p.elements.size()}, {"top", p.top}, {"bottom", p.bottom}, {"elements", els},
             {"covers", covers}};
      return Output{j, poset_to_dot(p), text};
    };
  });
  auto* trp = leaf(tn, "representables", "tensor product of two representables");
  DSetSource tsrc;
  tsrc.vertices = -1;
  trp->add_option("--s", tsrc.s, "first tree")->required();
  trp->add_option("--t", tsrc.t, "second tree")->required();
  trp->add_option("--vertices", tsrc.vertices, "vertex bound of the shapes");
  trp->add_option("--edges", tsrc.edges, "edge bound of the shapes");
  trp->callback([&] {
    action = [&] {
      if (tsrc.vertices < 0) tsrc.vertices = default_bound();
      auto x = build_dset(tsrc);
      auto check = validate_presheaf(x);
      Json j{{"within_bound", x.catalog().bound_label()}, {"presheaf", check.ok}, {"strict", is_strict(x)},
             {"total", x.total()}, {"shapes", counts_json(x)}};
      return Output{j, "", text_of(j)};
    };
  });

  // ---- w ----
  std::string w_operad = "OneOp";
  bool full = false;
  auto* w = group("w", "the W-construction");
  auto* wc = leaf(w, "cells", "cubes of W(P)(n)");
  wc->add_option("--n", n, "arity")->required();
  wc->add_option("--operad", w_operad, "OneOp, As-nonunital or a presentation");
  wc->callback([&] {
    action = [&] {
      if (n < 1 || n > 7) throw ScaleLimit("W cells are computed for 1 <= n <= 7");
      auto f = w_cells(resolve_operad(w_operad, n, size), n);
      Json cells = Json::array();
      for (const auto& c : f.cells) cells.push_back(Json{{"label", cell_label(c)}, {"dim", c.dim}});
      Json faces = Json::array();
      for (auto [a, b] : f.faces) faces.push_back(Json::array({a, b}));
      Json j{{"n", f.n}, {"cells_by_dim", f.cells_by_dim}, {"euler", f.euler}, {"cells", cells}, {"faces", faces}};
      return Output{j, face_poset_to_dot(f), text_of(j)};
    };
  });
  auto* wa = leaf(w, "assoc", "associahedron summary");
  wa->add_option("--n", n, "arity")->required();
  wa->add_flag("--full", full, "cell counts in every dimension");
  wa->callback([&] {
    action = [&] {
      auto s = associahedron_summary(n);
      Json j{{"vertices", s.vertex_count}, {"edges", s.cells_by_dim.size() > 1 ? s.cells_by_dim[1] : 0},
             {"euler", s.euler}};
      if (full) {
        j["cells_by_dim"] = s.cells_by_dim;
        j["binary_vertices"] = s.binary_vertices;
      }
      return Output{j, "", text_of(j)};
    };
  });
  auto* wct = leaf(w, "cat", "the category of reduced planar trees with n leaves");
  wct->add_option("--n", n, "arity")->required();
  wct->callback([&] {
    action = [&] {
      auto h = w_cat_hom(n);
      Json j{{"objects", h.object_count}, {"contractible", h.contractible}, {"within_bound", "n=" + std::to_string(n)}};
      return Output{j, "", text_of(j)};
    };
  });

  // ---- signs ----
  int sv = -1, se = -1;
  unsigned sseed = 0;
  auto* sg = group("signs", "signs for the normalized chain complex");
  auto* ss = leaf(sg, "solve", "solve the parity system");
  ss->add_option("--vertices", sv, "vertex bound of the planar shapes");
  ss->add_option("--edges", se, "edge bound");
  ss->add_option("--seed", sseed, "random values for free variables");
  ss->add_flag("--dump", dump, "include the sign table");
  ss->callback([&] {
    action = [&] {
      int v = sv < 0 ? default_bound() : sv;
      if (v < 1) throw std::invalid_argument("--vertices must be at least 1");
      if (v > 4) throw ScaleLimit("signs are solved for at most 4 vertices");
      SignSystem info;
      auto s = solve_signs(v, SolveOptions{false, sseed}, &info, se);
      std::string bound = "vertices<=" + std::to_string(v) + ",edges<=" + std::to_string(se < 0 ? 2 * v + 1 : se);
      Json j{{"feasible", s.has_value()}, {"variables", info.variables}, {"equations", info.equations},
             {"rank", info.rank}, {"within_bound", bound}};
      if (s) {
        bool fixed = gauge_fix(*s);
        j["gauge_fixed"] = fixed;
        j["violations"] = count_violations(*s);
        if (dump) {
          const auto& p = *s->shapes;
          Json table = Json::array();
          for (size_t t = 0; t < p.shapes.size(); ++t)
            for (size_t f = 0; f < p.faces[t].size(); ++f)
              table.push_back(Json{{"source", p.codes[p.face_shape[t][f]]}, {"target", p.codes[t]},
                                   {"face", p.faces[t][f].face.witness(*p.shapes[t])},
                                   {"sign", s->sign(static_cast<int>(t), static_cast<int>(f))}});
          j["table"] = table;
        }
      }
      return Output{j, "", text_of(j)};
    };
  });
  auto* sc = leaf(sg, "check", "d o d = 0 on the faces of a planar tree");
  sc->add_option("--vertices", sv, "vertex bound of the sign table");
  sc->add_option("--tree", tree_arg, "planar tree JSON")->required();
  sc->callback([&] {
    action = [&] {
      int v = sv < 0 ? default_bound() : sv;
      if (v < 1 || v > 4) throw ScaleLimit("signs are solved for 1 to 4 vertices");
      auto s = solve_signs(v);
      if (!s) throw std::runtime_error("parity system has no solution");
      gauge_fix(*s);
      Tree t = read_tree(tree_arg);
      if (!t.planar()) t = t.with_planar(true);
      bool ok = check_d_squared(t, *s);
      Json j{{"d_squared_zero", ok}, {"within_bound", "vertices<=" + std::to_string(v)}};
      return Output{j, "", text_of(j)};
    };
  });

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    out << Json{{"error", kind}, {"message", msg}}.dump() << "\n";
    return code;
  };
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    err << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    err << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(kExitInvalid, "Usage", e.what());
  }
  if (!action) return fail(kExitInvalid, "Usage", "no command given");
  try {
    Output o = action();
    std::string fmt = format.empty() ? "json" : format;
    if (fmt == "dot") {
      if (o.dot.empty()) return fail(kExitInvalid, "Usage", "this command has no DOT output");
      out << o.dot;
    } else if (fmt == "text") {
      out << (o.text.empty() ? text_of(o.json) : o.text);
    } else {
      out << o.json.dump() << "\n";
    }
    return kExitOk;
  } catch (const Undecided& u) {
    out << u.body.dump() << "\n";
    return kExitLimit;
  } catch (const ScaleLimit& e) {
    return fail(kExitLimit, "ScaleLimit", e.what());
  } catch (const MissingSign& e) {
    return fail(kExitLimit, "MissingSign", e.what());
  } catch (const TreeError& e) {
    return fail(kExitInvalid, to_string(e.kind), e.what());
  } catch (const OperadError& e) {
    if (e.kind == OperadError::Kind::BoundExceeded) return fail(kExitLimit, "BoundExceeded", e.what());
    return fail(kExitInvalid, e.kind == OperadError::Kind::NotIso ? "NotIso" : "InvalidOperad", e.what());
  } catch (const Json::exception& e) {
    return fail(kExitInvalid, "Json", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kExitInvalid, "InvalidArgument", e.what());
  } catch (const std::out_of_range& e) {
    return fail(kExitInvalid, "InvalidArgument", e.what());
  }
}

}  // namespace dendro
