#pragma once

#include <map>
#include <vector>

#include "shadowcalc/labeled_graph.hpp"

namespace shadowcalc {

enum class Color3 { White, Gray, Black };

// A partial darkening of a labeled graph: a shade per internal white vertex.
// Blacks of the graph are black and external whites are white, always.
struct Coloring {
    std::map<VertexId, Color3> shades;

    bool operator==(const Coloring& o) const = default;

    static Coloring all_white(const LabeledGraph& g);
    Color3 at(VertexId v) const { return shades.at(v); }
    Coloring with(VertexId v, Color3 c) const {
        Coloring r = *this;
        r.shades.at(v) = c;
        return r;
    }
};

// Shade of an arbitrary vertex under a coloring.
Color3 shade_of(const LabeledGraph& g, const Coloring& c, VertexId v);

void require_same_graph(const LabeledGraph& g, const Coloring& c, const Coloring& d);

// d is grayer than c: they agree except where d is gray.
bool grayer_leq(const LabeledGraph& g, const Coloring& c, const Coloring& d);
// d is darker than c: each vertex is at least as dark (white < gray < black).
bool darker_leq(const LabeledGraph& g, const Coloring& c, const Coloring& d);

// Least upper bound in the grayer order: gray wherever the colorings differ.
Coloring common_graying(const LabeledGraph& g, const Coloring& c, const Coloring& d);

// A maximal admissible gray string: one edge with endpoint shades WB/BW, a
// string of two or more edges through gray vertices, or an all-gray cycle
// (admitted only when the labels around it compose to an identity).
struct GrayEdge {
    std::vector<EdgeId> edges;  // orientation order, first edge first
    EdgeId rep = 0;
    bool cycle = false;
    bool operator==(const GrayEdge& o) const = default;
};

struct GrayEdgeSet {
    std::vector<GrayEdge> edges;  // ascending by rep
    const GrayEdge& by_rep(EdgeId rep) const;
    const GrayEdge* containing(EdgeId e) const;  // null if none
    std::vector<EdgeId> reps() const;
};

GrayEdgeSet gray_edges(const LabeledGraph& g, const Coloring& c);

// Composite of the vertex labels along the oriented path of a gray edge from
// its representative to `to` (both edges of the string).
BaseMap path_label(const LabeledGraph& g, const GrayEdge& s, EdgeId to);

// Containment map G(src) -> G(dst) for dst grayer than src, keyed by reps.
std::map<EdgeId, EdgeId> gray_edges_map(const LabeledGraph& g, const Coloring& src, const Coloring& dst);

// Containment map G(h*c) -> G(c) along a labeled graph map, keyed by reps.
std::map<EdgeId, EdgeId> gray_edges_map_along(const LabeledGraphMap& h, const Coloring& c);

// Pullback coloring h*c of the source of h, for c a coloring of the target.
Coloring pullback_coloring(const LabeledGraphMap& h, const Coloring& c);

// The square flipping a white vertex v and a black vertex w of c to gray maps
// under the gray edges functor to a pushout of finite sets; check that by an
// explicit colimit computation.
bool check_pushout(const LabeledGraph& g, const Coloring& c, VertexId white_flip, VertexId black_flip);

// One step of a monotone darkening together with a glue map on gray edges.
struct ZigZagStep {
    Coloring coloring;
    std::map<EdgeId, int> to_u;  // gray edge rep -> element of U
};

struct CanonicalForm {
    Coloring lighter, darker, graying;  // graying = lighter v darker
    std::map<EdgeId, int> glue;         // G(graying) reps -> U
};

// Reduce a monotone one-vertex-at-a-time darkening with compatible maps to U
// into its canonical form; the glue is forced by the colimit property of the
// zig-zag of gray edge sets.
CanonicalForm canonical_form(const LabeledGraph& g, const std::vector<ZigZagStep>& zigzag);

// Objects and morphisms of the gigantic graph category.
struct GiganticObject {
    std::vector<int> universe;  // sorted component ids
    LabeledGraph graph;
    Coloring coloring;
    std::map<EdgeId, int> glue;  // G(coloring) reps -> universe

    bool operator==(const GiganticObject& o) const = default;
};

struct GiganticMorphism {
    GiganticObject dom, cod;
    std::map<int, int> set_map;      // dom.universe -> cod.universe
    LabeledGraphMap graph_map;       // dom.graph -> cod.graph
    std::map<EdgeId, int> glue;      // G(c v h*d) reps -> cod.universe

    bool operator==(const GiganticMorphism& o) const = default;
};

ValidationReport validate_gigantic(const GiganticMorphism& m);

GiganticMorphism gigantic_identity(const GiganticObject& x);
GiganticMorphism compose_gigantic(const GiganticMorphism& m1, const GiganticMorphism& m2);  // m2 after m1

// The embedding of labeled graphs into the gigantic graph category.
GiganticObject embed_obj(const LabeledGraph& g);
GiganticMorphism embed(const LabeledGraphMap& h);

}  // namespace shadowcalc
