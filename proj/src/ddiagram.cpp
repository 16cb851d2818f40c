#include "shadowcalc/ddiagram.hpp"

#include <algorithm>

namespace shadowcalc {

LabeledProduct d_object(const LabeledGraph& g, const Coloring& c) {
    LabeledProduct p;
    for (const auto& s : gray_edges(g, c).edges) p.factors[s.rep] = g.edge_label.at(s.rep);
    return p;
}

LabeledProductMap d_arrow(const LabeledGraph& g, const Coloring& c_gray, const Coloring& c_prime) {
    int flips = 0;
    for (const auto& [v, sh] : c_gray.shades)
        if (sh != c_prime.shades.at(v)) ++flips;
    if (flips != 1) throw NotSingleFlip("expected exactly one flipped vertex");
    return d_arrow_multi(g, c_gray, c_prime);
}

LabeledProductMap d_arrow_multi(const LabeledGraph& g, const Coloring& c_gray, const Coloring& c_prime) {
    for (const auto& [v, sh] : c_gray.shades) {
        Color3 other = c_prime.shades.at(v);
        if (sh != other && (sh != Color3::Gray || other == Color3::Gray))
            throw NotSingleFlip("flip must leave gray");
    }

    GrayEdgeSet gray = gray_edges(g, c_gray);
    GrayEdgeSet prime = gray_edges(g, c_prime);
    LabeledProduct dom = d_object(g, c_gray);
    LabeledProduct cod = d_object(g, c_prime);
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& t : prime.edges) {
        const GrayEdge* s = gray.containing(t.rep);
        if (!s) throw ShapeMismatch("gray edge not contained after an ungraying flip");
        idx[t.rep] = s->rep;
        comps.emplace(t.rep, path_label(g, *s, t.rep));
    }
    return LabeledProductMap(std::move(dom), std::move(cod), std::move(idx), std::move(comps));
}

BaseMap iota_component(const LabeledGraphMap& m, EdgeId target_edge, EdgeId preimage_edge) {
    std::vector<EdgeId> pre = m.edge_preimages(target_edge);
    auto pos = std::find(pre.begin(), pre.end(), preimage_edge);
    if (pos == pre.end()) throw ShapeMismatch("not a preimage edge");
    const BaseMap& io = m.iota.at(target_edge);
    const BaseObject& out = m.source.edge_label.at(preimage_edge);
    std::map<Elem, Elem> fn;
    for (const Elem& x : io.dom.elems) {
        Elem y = io(x);
        fn[x] = pre.size() == 1 ? y : y.parts()[static_cast<std::size_t>(pos - pre.begin())];
    }
    return BaseMap(io.dom, out, std::move(fn));
}

LabeledProductMap d_along_graphmap(const LabeledGraphMap& h, const Coloring& c) {
    Coloring hc = pullback_coloring(h, c);
    GrayEdgeSet tgt = gray_edges(h.target, c);
    LabeledProduct dom = d_object(h.target, c);
    LabeledProduct cod = d_object(h.source, hc);
    auto along = gray_edges_map_along(h, c);
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& [srep, trep] : along) {
        idx[srep] = trep;
        auto img = h.underlying.emap.at(srep);
        if (img.collapsed || !(tgt.by_rep(trep).rep == img.id))
            throw ShapeMismatch("representative does not map to the representative");
        comps.emplace(srep, iota_component(h, trep, srep));
    }
    return LabeledProductMap(std::move(dom), std::move(cod), std::move(idx), std::move(comps));
}

ValidationReport check_rotation_bc(const LabeledGraph& g) {
    ValidationReport r;
    std::vector<VertexId> ivs = g.graph.internal_whites();
    // enumerate all colorings
    std::vector<Coloring> all{Coloring{}};
    for (VertexId v : ivs) {
        std::vector<Coloring> next;
        for (const auto& c : all)
            for (Color3 sh : {Color3::White, Color3::Gray, Color3::Black}) {
                Coloring d = c;
                d.shades[v] = sh;
                next.push_back(std::move(d));
            }
        all = std::move(next);
    }
    for (const auto& c : all) {
        for (VertexId v : ivs) {
            if (c.at(v) != Color3::Gray) continue;
            for (VertexId w : ivs) {
                if (w == v || c.at(w) != Color3::Gray) continue;
                // relation square: flip v to white, w to black
                Coloring cv = c.with(v, Color3::White);
                Coloring cw = c.with(w, Color3::Black);
                Coloring cvw = cv.with(w, Color3::Black);
                try {
                    LabeledProductMap top = d_arrow(g, c, cv);
                    LabeledProductMap left = d_arrow(g, c, cw);
                    LabeledProductMap right = d_arrow(g, cv, cvw);
                    LabeledProductMap bottom = d_arrow(g, cw, cvw);
                    if (!is_beck_chevalley(top, left, right, bottom))
                        r.add("NotBeckChevalley", "vertices " + std::to_string(v) + "," + std::to_string(w));
                } catch (const Error& e) {
                    r.add("RotationSquare", e.what());
                }
            }
        }
    }
    return r;
}

}  // namespace shadowcalc
