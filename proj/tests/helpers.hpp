#pragma once

#include "shadowcalc/evaluator.hpp"

namespace shadowcalc::testing {

inline const Color2 W = Color2::White, B = Color2::Black;

// A collapsing map joining two adjacent internal whites of a path into one,
// composing their labels; `left` is the smaller vertex id of the pair.
inline LabeledGraphMap collapse_adjacent_whites(const LabeledGraph& g, VertexId left) {
    VertexId right = left + 1;
    EdgeId mid = left;  // the edge joining them on a standard path
    LabeledGraph tgt = g;
    tgt.graph.vertices.erase(right);
    tgt.graph.edges.erase(mid);
    tgt.edge_label.erase(mid);
    tgt.orient.erase(right);
    tgt.vertex_label.erase(right);
    // re-route the right neighbor edge of `right` to `left`
    EdgeId re = right;
    auto ends = tgt.graph.edges.at(re);
    if (ends.first == right) ends.first = left;
    if (ends.second == right) ends.second = left;
    tgt.graph.edges.at(re) = ends;
    tgt.orient.at(left) = {left - 1, re};
    tgt.vertex_label.at(left) = compose(g.vertex_label.at(left), g.vertex_label.at(right));

    LabeledGraphMap m;
    m.source = g;
    m.target = tgt;
    m.underlying.source = g.graph;
    m.underlying.target = tgt.graph;
    for (const auto& [v, c] : g.graph.vertices) m.underlying.vmap[v] = v == right ? left : v;
    for (const auto& [e, es] : g.graph.edges)
        m.underlying.emap[e] = e == mid ? EdgeImage::vertex(left) : EdgeImage::edge(e);
    for (const auto& [e, lab] : tgt.edge_label) m.iota.emplace(e, BaseMap::identity(lab));
    return m;
}

// n-sheet trivial cover of a two-edge path with the given per-sheet labels;
// target labels are the ordered products.
inline LabeledGraphMap trivial_cover(const std::vector<BaseObject>& lefts,
                                     const std::vector<BaseObject>& rights) {
    std::size_t n = lefts.size();
    LabeledGraph src, tgt;
    tgt.graph.vertices = {{0, W}, {1, B}, {2, W}};
    tgt.graph.edges = {{0, {0, 1}}, {1, {1, 2}}};
    tgt.edge_label[0] = ordered_product(lefts);
    tgt.edge_label[1] = ordered_product(rights);
    LabeledGraphMap m;
    for (std::size_t i = 0; i < n; ++i) {
        VertexId v0 = static_cast<VertexId>(10 + 3 * i);
        EdgeId e0 = static_cast<EdgeId>(10 + 2 * i);
        src.graph.vertices[v0] = W;
        src.graph.vertices[v0 + 1] = B;
        src.graph.vertices[v0 + 2] = W;
        src.graph.edges[e0] = {v0, v0 + 1};
        src.graph.edges[e0 + 1] = {v0 + 1, v0 + 2};
        src.edge_label[e0] = lefts[i];
        src.edge_label[e0 + 1] = rights[i];
        m.underlying.vmap[v0] = 0;
        m.underlying.vmap[v0 + 1] = 1;
        m.underlying.vmap[v0 + 2] = 2;
        m.underlying.emap[e0] = EdgeImage::edge(0);
        m.underlying.emap[e0 + 1] = EdgeImage::edge(1);
    }
    m.source = src;
    m.target = tgt;
    m.underlying.source = src.graph;
    m.underlying.target = tgt.graph;
    auto ident = [](const BaseObject& o) {
        std::map<Elem, Elem> fn;
        for (const Elem& e : o.elems) fn[e] = e;
        return fn;
    };
    m.iota.emplace(0, BaseMap(tgt.edge_label.at(0), tgt.edge_label.at(0), ident(tgt.edge_label.at(0))));
    m.iota.emplace(1, BaseMap(tgt.edge_label.at(1), tgt.edge_label.at(1), ident(tgt.edge_label.at(1))));
    return m;
}

}  // namespace shadowcalc::testing
