#pragma once

#include <json.hpp>

#include "shadowcalc/evaluator.hpp"

namespace shadowcalc {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json to_json(const Elem& e);
Elem elem_from_json(const json& j);

json to_json(const BaseObject& o);
BaseObject base_object_from_json(const json& j);

json to_json(const BaseMap& m);
BaseMap base_map_from_json(const json& j);

json to_json(const ColoredGraph& g);
ColoredGraph graph_from_json(const json& j);

json to_json(const GraphMap& m);
GraphMap graph_map_from_json(const json& j);

json to_json(const LabeledGraph& g);
LabeledGraph labeled_graph_from_json(const json& j);

json to_json(const LabeledGraphMap& m);
LabeledGraphMap labeled_graph_map_from_json(const json& j);

json to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

json to_json(const LabeledProduct& p);
LabeledProduct labeled_product_from_json(const json& j);

json to_json(const Family& f);
Family family_from_json(const json& j);

json to_json(const Assignment& a);
Assignment assignment_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const OperationPlan& p);

// Graphviz export with black filled, white open, gray shaded vertices.
std::string to_dot(const LabeledGraph& g, const Coloring* coloring = nullptr);

}  // namespace shadowcalc
