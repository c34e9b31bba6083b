#pragma once

#include <json.hpp>

#include "dendro/broad_order.hpp"
#include "dendro/dsets.hpp"
#include "dendro/omega.hpp"
#include "dendro/presentation.hpp"
#include "dendro/trees.hpp"

namespace dendro {

using Json = nlohmann::ordered_json;

// {"edges":[...], "parent":{child:parent}, "leaves":[...], "planar_order":{edge:[inputs]}}
// Schema errors throw TreeError with kind Parse.
Tree tree_from_json(const Json& j);
Json tree_to_json(const Tree& t);

// {"source":tree, "target":tree, "edge_map":{source edge: target edge}}
// Throws std::invalid_argument when the map is not an arrow of the dendroidal category.
OmegaMorphism morphism_from_json(const Json& j);
Json morphism_to_json(const OmegaMorphism& f);
Json edge_map_to_json(const Tree& s, const Tree& t, const std::vector<int>& map);

// {"carrier":[...], "relations":[[a,[b1,...]],...]}
BroadRelation broad_from_json(const Json& j);
Json broad_to_json(const BroadRelation& r);

// Terms are {"op":name, "args":[...]} or {"var":k, "color":c} (color only needed at
// the root); a string is read in the form "mu(x0,x1)".
Term term_from_json(const Presentation& p, const Json& j, int color_hint = -1);
Json term_to_json(const Presentation& p, const Term& t);

// {"colors":[...], "generators":[{"name","dom":[...],"cod"}], "relations":[[term,term],...], "planar":bool}
Presentation presentation_from_json(const Json& j);
Json presentation_to_json(const Presentation& p);

// {"bound":V, "max_edges":E, "shapes":[tree,...], "dendrices":{code:[ids]},
//  "action":{"<source code>-><target code>:<edge map>":{id:id}}}
// Shapes are standard trees; edge maps list target edge indices by source edge index.
Json dset_to_json(const DendroidalSet& x);
DendroidalSet dset_from_json(const Json& j);
std::string morphism_key(const std::string& source_code, const std::string& target_code,
                         const std::vector<int>& map);

}  // namespace dendro
