#include "doctest.h"
#include "helpers.hpp"
#include "shadowcalc/coherence.hpp"
#include "shadowcalc/json_io.hpp"

using namespace shadowcalc;
using namespace shadowcalc::testing;

TEST_CASE("serialization round-trips") {
    BaseObject b = BaseObject::range(3);
    Rng rng(21);
    BaseMap f = random_map(rng, b, BaseObject::range(2));

    CHECK(base_object_from_json(to_json(b)) == b);
    CHECK(base_map_from_json(to_json(f)) == f);

    auto g = make_path({W, B, W, B, W}, {b, b, b, BaseObject::range(2)},
                       {{2, BaseMap::identity(b)}});
    CHECK(labeled_graph_from_json(to_json(g)) == g);
    CHECK(graph_from_json(to_json(g.graph)) == g.graph);

    auto m = darkening_map(g, {2});
    CHECK(labeled_graph_map_from_json(to_json(m)) == m);
    CHECK(graph_map_from_json(to_json(m.underlying)) == m.underlying);

    Coloring c = Coloring::all_white(g).with(2, Color3::Gray);
    CHECK(coloring_from_json(to_json(c)) == c);

    Assignment a = random_assignment(g, rng, 2);
    CHECK(assignment_from_json(to_json(a)) == a);
    for (const auto& [u, fam] : a.comp) CHECK(family_from_json(to_json(fam)) == fam);

    // byte-identical output on identical input
    CHECK(to_json(a).dump(2) == to_json(assignment_from_json(to_json(a))).dump(2));
}

TEST_CASE("dot export mentions every vertex and edge") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W}, {b, b});
    std::string dot = to_dot(g);
    CHECK(dot.find("v0") != std::string::npos);
    CHECK(dot.find("v1 [style=filled, fillcolor=black") != std::string::npos);
    CHECK(dot.find("v0 -- v1") != std::string::npos);
    Coloring c = Coloring::all_white(g);
    auto g2 = make_path({B, W, B}, {b, b});
    Coloring c2 = Coloring::all_white(g2).with(1, Color3::Gray);
    std::string dot2 = to_dot(g2, &c2);
    CHECK(dot2.find("fillcolor=gray") != std::string::npos);
}
