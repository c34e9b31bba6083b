#include "dendro/json_io.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace dendro {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw TreeError(TreeError::Kind::Parse, msg); }

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) schema(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

Tree tree_from_json(const Json& j) {
  if (!j.is_object()) schema("a tree must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (k != "edges" && k != "parent" && k != "leaves" && k != "planar_order") schema("unknown tree field " + k);
  if (!j.contains("edges")) schema("a tree needs \"edges\"");
  auto edges = strings(j["edges"], "edges");
  std::map<std::string, std::string> parent;
  if (j.contains("parent")) {
    if (!j["parent"].is_object()) schema("\"parent\" must be an object");
    for (const auto& [c, p] : j["parent"].items()) {
      if (!p.is_string()) schema("parents must be strings");
      parent[c] = p.get<std::string>();
    }
  }
  std::vector<std::string> leaves;
  if (j.contains("leaves")) leaves = strings(j["leaves"], "leaves");
  if (!j.contains("planar_order")) return Tree::build(edges, parent, leaves);
  if (!j["planar_order"].is_object()) schema("\"planar_order\" must be an object");
  std::map<std::string, std::vector<std::string>> order;
  for (const auto& [e, kids] : j["planar_order"].items()) order[e] = strings(kids, "planar_order entries");
  return Tree::build_planar(edges, parent, leaves, order);
}

Json tree_to_json(const Tree& t) {
  Json j;
  j["edges"] = t.names();
  Json parent = Json::object();
  for (int e = 0; e < t.size(); ++e)
    if (e != t.root()) parent[t.name(e)] = t.name(t.parent(e));
  j["parent"] = parent;
  Json leaves = Json::array();
  for (int e : t.leaves()) leaves.push_back(t.name(e));
  j["leaves"] = leaves;
  if (t.planar()) {
    Json order = Json::object();
    for (int e = 0; e < t.size(); ++e) {
      if (t.arity(e) < 2) continue;
      Json kids = Json::array();
      for (int k : t.inputs(e)) kids.push_back(t.name(k));
      order[t.name(e)] = kids;
    }
    j["planar_order"] = order;
  }
  return j;
}

OmegaMorphism morphism_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("edge_map"))
    schema("a morphism needs \"source\", \"target\" and \"edge_map\"");
  OmegaMorphism f;
  f.source = std::make_shared<const Tree>(tree_from_json(j["source"]));
  f.target = std::make_shared<const Tree>(tree_from_json(j["target"]));
  const auto& m = j["edge_map"];
  if (!m.is_object()) schema("\"edge_map\" must be an object");
  f.map.assign(f.source->size(), -1);
  for (const auto& [a, b] : m.items()) {
    int x = f.source->find(a);
    if (x < 0) throw TreeError(TreeError::Kind::UnknownEdge, "unknown source edge " + a);
    if (!b.is_string()) schema("edge map values must be strings");
    int y = f.target->find(b.get<std::string>());
    if (y < 0) throw TreeError(TreeError::Kind::UnknownEdge, "unknown target edge " + b.get<std::string>());
    f.map[x] = y;
  }
  for (int x = 0; x < f.source->size(); ++x)
    if (f.map[x] < 0) throw std::invalid_argument("edge map misses the source edge " + f.source->name(x));
  if (!is_morphism(*f.source, *f.target, f.map))
    throw std::invalid_argument("edge map does not define a morphism of trees");
  return f;
}

Json edge_map_to_json(const Tree& s, const Tree& t, const std::vector<int>& map) {
  Json m = Json::object();
  for (int x = 0; x < s.size(); ++x) m[s.name(x)] = t.name(map[x]);
  return m;
}

Json morphism_to_json(const OmegaMorphism& f) {
  return Json{{"source", tree_to_json(*f.source)},
              {"target", tree_to_json(*f.target)},
              {"edge_map", edge_map_to_json(*f.source, *f.target, f.map)}};
}

BroadRelation broad_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("carrier")) schema("a broad relation needs \"carrier\"");
  BroadRelation r;
  r.carrier = strings(j["carrier"], "carrier");
  auto index = [&](const Json& x) {
    if (!x.is_string()) schema("relation entries must be carrier names");
    int i = r.index_of(x.get<std::string>());
    if (i < 0) schema("element outside the carrier: " + x.get<std::string>());
    return i;
  };
  if (j.contains("relations"))
    for (const auto& rel : j["relations"]) {
      if (!rel.is_array() || rel.size() != 2 || !rel[1].is_array()) schema("relations are [a,[b1,...]]");
      std::vector<int> rhs;
      for (const auto& b : rel[1]) rhs.push_back(index(b));
      r.add(index(rel[0]), rhs);
    }
  return r;
}

Json broad_to_json(const BroadRelation& r) {
  Json rel = Json::array();
  for (const auto& [a, rhs] : r.relations) {
    Json b = Json::array();
    for (int x : rhs) b.push_back(r.carrier[x]);
    rel.push_back(Json::array({r.carrier[a], b}));
  }
  return Json{{"carrier", r.carrier}, {"relations", rel}};
}

namespace {

void term_text(const Presentation& p, const Json& j, std::string& out, int& root_color) {
  if (j.is_object() && j.contains("var")) {
    if (!j["var"].is_number_integer()) throw std::invalid_argument("\"var\" must be an integer");
    if (j.contains("color")) {
      int c = p.color_index(j["color"].get<std::string>());
      if (c < 0) throw std::invalid_argument("unknown color " + j["color"].get<std::string>());
      if (out.empty()) root_color = c;
    }
    out += "x" + std::to_string(j["var"].get<int>());
    return;
  }
  if (!j.is_object() || !j.contains("op") || !j["op"].is_string())
    throw std::invalid_argument("a term node needs \"op\" or \"var\"");
  out += j["op"].get<std::string>();
  if (!j.contains("args")) return;
  out += "(";
  bool first = true;
  for (const auto& a : j["args"]) {
    if (!first) out += ",";
    first = false;
    term_text(p, a, out, root_color);
  }
  out += ")";
}

}  // namespace

Term term_from_json(const Presentation& p, const Json& j, int color_hint) {
  if (j.is_string()) return parse_term(p, j.get<std::string>(), color_hint);
  std::string text;
  int root = color_hint;
  term_text(p, j, text, root);
  return parse_term(p, text, root);
}

Json term_to_json(const Presentation& p, const Term& t) {
  size_t k = 0;
  std::function<Json(int)> walk = [&](int color) -> Json {
    char16_t c = t.s[k++];
    if (c >= kVar) {
      Json v{{"var", static_cast<int>(c - kVar)}};
      if (color < 0) v["color"] = p.colors[t.cod];
      return v;
    }
    const auto& g = p.generators[c];
    Json node{{"op", g.name}};
    if (!g.dom.empty()) {
      Json args = Json::array();
      for (int d : g.dom) args.push_back(walk(d));
      node["args"] = args;
    }
    return node;
  };
  return walk(-1);
}

Presentation presentation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("colors") || !j.contains("generators"))
    throw std::invalid_argument("a presentation needs \"colors\" and \"generators\"");
  Presentation p;
  p.colors = strings(j["colors"], "colors");
  if (j.contains("planar")) p.planar = j["planar"].get<bool>();
  auto color = [&](const Json& c) {
    if (!c.is_string()) throw std::invalid_argument("colors must be strings");
    int i = p.color_index(c.get<std::string>());
    if (i < 0) throw std::invalid_argument("unknown color " + c.get<std::string>());
    return i;
  };
  for (const auto& g : j["generators"]) {
    if (!g.is_object() || !g.contains("name") || !g.contains("cod"))
      throw std::invalid_argument("generators need \"name\", \"dom\" and \"cod\"");
    Generator gen;
    gen.name = g["name"].get<std::string>();
    if (g.contains("dom"))
      for (const auto& c : g["dom"]) gen.dom.push_back(color(c));
    gen.cod = color(g["cod"]);
    p.generators.push_back(gen);
  }
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) {
      if (!r.is_array() || r.size() != 2) throw std::invalid_argument("relations are pairs of terms");
      Term a = term_from_json(p, r[0]);
      Term b = term_from_json(p, r[1], a.cod);
      p.relations.push_back({a, b});
    }
  validate_presentation(p);
  return p;
}

Json presentation_to_json(const Presentation& p) {
  Json gens = Json::array();
  for (const auto& g : p.generators) {
    Json dom = Json::array();
    for (int d : g.dom) dom.push_back(p.colors[d]);
    gens.push_back(Json{{"name", g.name}, {"dom", dom}, {"cod", p.colors[g.cod]}});
  }
  Json rels = Json::array();
  for (const auto& [a, b] : p.relations) rels.push_back(Json::array({term_to_json(p, a), term_to_json(p, b)}));
  return Json{{"colors", p.colors}, {"generators", gens}, {"relations", rels}, {"planar", p.planar}};
}

std::string morphism_key(const std::string& source_code, const std::string& target_code,
                         const std::vector<int>& map) {
  std::string k = source_code + "->" + target_code + ":";
  for (size_t i = 0; i < map.size(); ++i) k += (i ? "," : "") + std::to_string(map[i]);
  return k;
}

Json dset_to_json(const DendroidalSet& x) {
  const ShapeCatalog& c = x.catalog();
  Json shapes = Json::array(), dendrices = Json::object(), action = Json::object();
  for (int s = 0; s < c.size(); ++s) {
    shapes.push_back(tree_to_json(c.shape(s)));
    Json ids = Json::array();
    for (int y = 0; y < x.count(s); ++y) ids.push_back(y);
    dendrices[c.code(s)] = ids;
  }
  for (int t = 0; t < c.size(); ++t) {
    if (x.count(t) == 0) continue;
    for (int r = 0; r < c.size(); ++r)
      for (const auto& m : hom_maps(c.shape(r), c.shape(t))) {
        Json table = Json::object();
        for (int y = 0; y < x.count(t); ++y) table[std::to_string(y)] = x.act(r, t, m, y);
        action[morphism_key(c.code(r), c.code(t), m)] = table;
      }
  }
  return Json{{"bound", c.max_vertices()},
              {"max_edges", c.max_edges()},
              {"shapes", shapes},
              {"dendrices", dendrices},
              {"action", action}};
}

DendroidalSet dset_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("bound") || !j.contains("dendrices"))
    throw std::invalid_argument("a dendroidal set needs \"bound\" and \"dendrices\"");
  int bound = j["bound"].get<int>();
  int max_edges = -1;
  if (j.contains("max_edges")) max_edges = j["max_edges"].get<int>();
  std::vector<Tree> listed;
  if (j.contains("shapes"))
    for (const auto& s : j["shapes"]) listed.push_back(tree_from_json(s));
  if (max_edges < 0 && !listed.empty()) {
    max_edges = 1;
    for (const auto& t : listed) max_edges = std::max(max_edges, t.size());
  }
  auto c = std::make_shared<const ShapeCatalog>(bound, max_edges);
  for (const auto& t : listed) {
    int s = c->find(t);
    if (s < 0) throw std::invalid_argument("shape outside the bound: " + canonical_code(t, false));
    if (!(c->shape(s) == t)) throw std::invalid_argument("shapes must be given in standard form");
  }
  auto table = std::make_shared<std::map<std::string, std::map<int, int>>>();
  if (j.contains("action"))
    for (const auto& [key, m] : j["action"].items())
      for (const auto& [a, b] : m.items()) (*table)[key][std::stoi(a)] = b.get<int>();
  std::vector<std::string> codes;
  for (int s = 0; s < c->size(); ++s) codes.push_back(c->code(s));
  auto restrict = [table, codes](int r, int t, const std::vector<int>& map, const Dendrex& x) -> Dendrex {
    auto it = table->find(morphism_key(codes[r], codes[t], map));
    if (it == table->end()) {
      bool id = r == t;
      for (size_t i = 0; i < map.size() && id; ++i) id = map[i] == static_cast<int>(i);
      return id ? x : Dendrex{-1};
    }
    auto jt = it->second.find(x[0]);
    return {jt == it->second.end() ? -1 : jt->second};
  };
  DendroidalSet x(c, restrict, "input");
  for (const auto& [code, ids] : j["dendrices"].items()) {
    int s = c->find_code(code);
    if (s < 0) throw std::invalid_argument("unknown shape code " + code);
    int expect = 0;
    for (const auto& id : ids) {
      if (id.get<int>() != expect++) throw std::invalid_argument("dendrex ids of a shape must be 0, 1, ...");
      x.add(s, {id.get<int>()});
    }
  }
  return x;
}

}  // namespace dendro
