#pragma once

#include <map>
#include <optional>
#include <vector>

#include "shadowcalc/fin.hpp"
#include "shadowcalc/graph.hpp"

namespace shadowcalc {

// Orientation of an internal white vertex: its source and target edges.
struct Orientation {
    EdgeId src = 0;
    EdgeId tgt = 0;
    bool operator==(const Orientation& o) const = default;
};

// A decorated graph: colored graph, orientations on internal whites,
// edge labels in finite sets, and vertex labels as maps between the labels
// of the source and target edges.
struct LabeledGraph {
    ColoredGraph graph;
    std::map<VertexId, Orientation> orient;   // internal whites
    std::map<EdgeId, BaseObject> edge_label;
    std::map<VertexId, BaseMap> vertex_label;  // internal whites

    bool operator==(const LabeledGraph& o) const = default;

    const BaseObject& label(EdgeId e) const { return edge_label.at(e); }
};

ValidationReport validate_labeled(const LabeledGraph& g);

// Ordered product of edge labels; the 0-ary product is the singleton and a
// 1-ary product is the bare factor, so identity-labeled identifications stay
// literal identities.
BaseObject ordered_product(const std::vector<BaseObject>& factors);

struct LabeledGraphMap {
    LabeledGraph source, target;
    GraphMap underlying;  // on the colored graphs
    // Edge identification: per target edge, a bijection from the target label
    // to the ordered product of the preimage labels (ascending EdgeId).
    std::map<EdgeId, BaseMap> iota;

    bool operator==(const LabeledGraphMap& o) const = default;

    static LabeledGraphMap identity(const LabeledGraph& g);

    std::vector<EdgeId> edge_preimages(EdgeId target_edge) const;
    BaseObject iota_codomain(EdgeId target_edge) const;
};

ValidationReport validate_labeled_map(const LabeledGraphMap& m);

LabeledGraphMap compose_labeled(const LabeledGraphMap& f, const LabeledGraphMap& g);  // g after f

// The cut graph: star components (plus any black-free leftover components),
// with component bookkeeping. Component ids are ordinals over components that
// contain a black vertex, ordered by least merged vertex id.
struct Constellation {
    LabeledGraph graph;
    int star_count = 0;
    std::map<VertexId, int> star_of_vertex;     // black/merged vertices and their leaves
    std::map<EdgeId, int> star_of_edge;         // edges of star components
    std::map<VertexId, VertexId> merged_black;  // original black -> merged representative
    std::map<VertexId, std::pair<EdgeId, int>> cap_origin;  // cap vertex -> (edge, end 0/1)
};

// Maximal cutting: collapse black-black edges, delete internal whites and
// edges joining them, cap dangling edge ends with fresh external whites.
Constellation maximal_cut(const LabeledGraph& g);

// Cutting along a chosen set of internal whites. Deletes exactly the vertices
// of T (and edges whose two ends both lie in T) and caps the dangling ends;
// black-black edges are kept.
LabeledGraph cut_along(const LabeledGraph& g, const std::vector<VertexId>& T);

// The induced map on star components of the maximal cuttings.
std::map<int, int> pi0_psi(const LabeledGraphMap& m);

bool is_inert(const LabeledGraphMap& m);

// The label-preserving star-edge bijection induced by an inert morphism,
// or nullopt when the morphism is not inert.
std::optional<std::map<EdgeId, EdgeId>> inert_constellation_bijection(const LabeledGraphMap& m);

// A finite diagram of labeled graph maps, given as objects plus arrows.
struct GraphDiagram {
    std::map<int, LabeledGraph> objects;
    // arrow id -> (source object, target object, map)
    std::map<int, std::tuple<int, int, LabeledGraphMap>> arrows;
};

// Valid iff every arrow pulls each cut set back onto the source cut set.
ValidationReport validate_cut_set(const GraphDiagram& diagram,
                                  const std::map<int, std::vector<VertexId>>& cut_sets);

// Tagged union with fresh ids on the right summand; returns the relabeling of
// the second graph's vertices and edges.
struct DisjointUnion {
    LabeledGraph graph;
    std::map<VertexId, VertexId> right_vertex;
    std::map<EdgeId, EdgeId> right_edge;
};
DisjointUnion disjoint_union(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace shadowcalc
