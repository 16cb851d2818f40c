#include "shadowcalc/graph.hpp"

#include <algorithm>
#include <set>

namespace shadowcalc {

int ColoredGraph::degree(VertexId v) const {
    int d = 0;
    for (const auto& [e, ends] : edges) {
        if (ends.first == v) ++d;
        if (ends.second == v) ++d;
    }
    return d;
}

std::vector<VertexId> ColoredGraph::internal_whites() const {
    std::vector<VertexId> out;
    for (const auto& [v, c] : vertices)
        if (c == Color2::White && degree(v) == 2) out.push_back(v);
    return out;
}

std::vector<EdgeId> ColoredGraph::incident_edges(VertexId v) const {
    std::vector<EdgeId> out;
    for (const auto& [e, ends] : edges)
        if (ends.first == v || ends.second == v) out.push_back(e);
    return out;
}

namespace {

// union-find keyed by id
class Dsu {
public:
    int find(int x) {
        auto it = parent_.find(x);
        if (it == parent_.end()) {
            parent_[x] = x;
            return x;
        }
        if (it->second == x) return x;
        int r = find(it->second);
        parent_[x] = r;
        return r;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);  // least id is the representative
    }

private:
    std::map<int, int> parent_;
};

}  // namespace

std::map<VertexId, VertexId> ColoredGraph::components() const {
    Dsu dsu;
    for (const auto& [v, c] : vertices) dsu.find(v);
    for (const auto& [e, ends] : edges) dsu.unite(ends.first, ends.second);
    std::map<VertexId, VertexId> out;
    for (const auto& [v, c] : vertices) out[v] = dsu.find(v);
    return out;
}

ValidationReport validate_graph(const ColoredGraph& g) {
    ValidationReport r;
    for (const auto& [e, ends] : g.edges) {
        if (!g.vertices.count(ends.first) || !g.vertices.count(ends.second))
            r.add("DanglingEdge", "edge " + std::to_string(e) + " has a missing endpoint");
    }
    if (!r.valid()) return r;  // remaining checks assume well-formed incidence
    for (const auto& [v, c] : g.vertices) {
        int d = g.degree(v);
        if (d == 0) r.add("IsolatedVertex", "vertex " + std::to_string(v));
        if (c == Color2::White && d > 2) r.add("WhiteDegreeExceeded", "vertex " + std::to_string(v));
    }
    for (const auto& [e, ends] : g.edges) {
        if (ends.first == ends.second && g.color(ends.first) == Color2::White)
            r.add("WhiteLoop", "edge " + std::to_string(e));
    }
    return r;
}

GraphMap GraphMap::identity(const ColoredGraph& g) {
    GraphMap m;
    m.source = g;
    m.target = g;
    for (const auto& [v, c] : g.vertices) m.vmap[v] = v;
    for (const auto& [e, ends] : g.edges) m.emap[e] = EdgeImage::edge(e);
    return m;
}

ValidationReport validate_map(const GraphMap& m) {
    ValidationReport r;
    auto rs = validate_graph(m.source);
    auto rt = validate_graph(m.target);
    for (auto& i : rs.issues) r.add("Source" + i.code, i.detail);
    for (auto& i : rt.issues) r.add("Target" + i.code, i.detail);
    for (const auto& [v, c] : m.source.vertices) {
        auto it = m.vmap.find(v);
        if (it == m.vmap.end() || !m.target.vertices.count(it->second)) {
            r.add("VertexUnmapped", "vertex " + std::to_string(v));
            continue;
        }
    }
    if (!r.valid()) return r;
    for (const auto& [e, ends] : m.source.edges) {
        auto it = m.emap.find(e);
        if (it == m.emap.end()) {
            r.add("EdgeUnmapped", "edge " + std::to_string(e));
            continue;
        }
        VertexId a = m.vmap.at(ends.first), b = m.vmap.at(ends.second);
        if (it->second.collapsed) {
            VertexId w = it->second.id;
            if (!m.target.vertices.count(w) || w != a || w != b)
                r.add("EndpointMismatch", "edge " + std::to_string(e) + " collapses away from its endpoints");
        } else {
            auto te = m.target.edges.find(it->second.id);
            if (te == m.target.edges.end()) {
                r.add("EndpointMismatch", "edge " + std::to_string(e) + " maps to a missing edge");
            } else {
                auto [ta, tb] = te->second;
                bool ok = (ta == a && tb == b) || (ta == b && tb == a);
                if (!ok) r.add("EndpointMismatch", "edge " + std::to_string(e));
            }
        }
    }
    for (const auto& [v, c] : m.source.vertices) {
        VertexId w = m.vmap.at(v);
        if (m.source.is_black(v) && !m.target.is_black(w))
            r.add("ColorViolation", "black vertex " + std::to_string(v) + " maps to white");
        if (m.source.is_external_white(v) && !m.target.is_external_white(w))
            r.add("ColorViolation", "external white " + std::to_string(v) + " must map to an external white");
        if (m.source.is_internal_white(v) && !(m.target.is_internal_white(w) || m.target.is_black(w)))
            r.add("ColorViolation", "internal white " + std::to_string(v) + " must map to internal white or black");
    }
    return r;
}

namespace {

bool is_color_preserving(const GraphMap& m) {
    for (const auto& [v, c] : m.source.vertices)
        if (m.target.color(m.vmap.at(v)) != c) return false;
    return true;
}

bool is_graph_isomorphism(const GraphMap& m) {
    if (m.source.vertices.size() != m.target.vertices.size()) return false;
    if (m.source.edges.size() != m.target.edges.size()) return false;
    std::set<VertexId> vimg;
    for (const auto& [v, w] : m.vmap) vimg.insert(w);
    if (vimg.size() != m.target.vertices.size()) return false;
    std::set<EdgeId> eimg;
    for (const auto& [e, img] : m.emap) {
        if (img.collapsed) return false;
        eimg.insert(img.id);
    }
    return eimg.size() == m.target.edges.size();
}

}  // namespace

bool is_darkening(const GraphMap& m) {
    if (!is_graph_isomorphism(m)) return false;
    for (const auto& [v, c] : m.source.vertices) {
        Color2 tc = m.target.color(m.vmap.at(v));
        if (c == Color2::Black && tc != Color2::Black) return false;
        // white -> white or black is fine
    }
    return true;
}

bool is_collapsing(const GraphMap& m) {
    if (!is_color_preserving(m)) return false;
    // every target edge has exactly one preimage edge
    std::map<EdgeId, int> edge_hits;
    for (const auto& [e, ends] : m.target.edges) edge_hits[e] = 0;
    for (const auto& [e, img] : m.emap)
        if (!img.collapsed) ++edge_hits.at(img.id);
    for (const auto& [e, n] : edge_hits)
        if (n != 1) return false;
    // every target vertex has a nonempty connected preimage (vertices mapping
    // to it, joined by the edges that collapse onto it)
    for (const auto& [w, c] : m.target.vertices) {
        std::vector<VertexId> pre;
        for (const auto& [v, img] : m.vmap)
            if (img == w) pre.push_back(v);
        if (pre.empty()) return false;
        Dsu dsu;
        for (VertexId v : pre) dsu.find(v);
        for (const auto& [e, img] : m.emap)
            if (img.collapsed && img.id == w) {
                auto ends = m.source.edges.at(e);
                dsu.unite(ends.first, ends.second);
            }
        int root = dsu.find(pre.front());
        for (VertexId v : pre)
            if (dsu.find(v) != root) return false;
    }
    return true;
}

bool is_covering(const GraphMap& m) {
    if (!is_color_preserving(m)) return false;
    for (const auto& [e, img] : m.emap)
        if (img.collapsed) return false;
    return true;
}

std::string to_string(MorphismClass c) {
    switch (c) {
        case MorphismClass::Darkening: return "darkening";
        case MorphismClass::Collapsing: return "collapsing";
        case MorphismClass::Covering: return "covering";
        case MorphismClass::General: return "general";
        case MorphismClass::Invalid: return "invalid";
    }
    return "?";
}

MorphismClass classify_map(const GraphMap& m) {
    if (!validate_map(m).valid()) return MorphismClass::Invalid;
    if (is_darkening(m) && !is_color_preserving(m)) return MorphismClass::Darkening;
    if (is_collapsing(m)) return MorphismClass::Collapsing;
    if (is_covering(m)) return MorphismClass::Covering;
    return MorphismClass::General;
}

Factorization factorize(const GraphMap& m) {
    auto report = validate_map(m);
    if (!report.valid()) throw InvalidMorphism("factorize: " + report.issues.front().code);

    // Stage 1: darken a vertex iff its image is black.
    ColoredGraph g1 = m.source;
    for (auto& [v, c] : g1.vertices)
        if (m.target.is_black(m.vmap.at(v))) c = Color2::Black;
    GraphMap d = GraphMap::identity(m.source);
    d.target = g1;

    // Stage 2: collapse an edge iff its image is a vertex. Components of the
    // collapsed subgraph become single vertices named by their least member.
    Dsu dsu;
    for (const auto& [v, c] : g1.vertices) dsu.find(v);
    for (const auto& [e, img] : m.emap)
        if (img.collapsed) {
            auto ends = g1.edges.at(e);
            dsu.unite(ends.first, ends.second);
        }
    ColoredGraph g2;
    for (const auto& [v, c] : g1.vertices) {
        VertexId r = dsu.find(v);
        g2.vertices[r] = g1.vertices.at(r);
    }
    for (const auto& [e, img] : m.emap)
        if (!img.collapsed) {
            auto ends = g1.edges.at(e);
            g2.edges[e] = {dsu.find(ends.first), dsu.find(ends.second)};
        }
    GraphMap c;
    c.source = g1;
    c.target = g2;
    for (const auto& [v, col] : g1.vertices) c.vmap[v] = dsu.find(v);
    for (const auto& [e, img] : m.emap)
        c.emap[e] = img.collapsed ? EdgeImage::vertex(dsu.find(g1.edges.at(e).first)) : EdgeImage::edge(e);

    // Stage 3: the induced covering map.
    GraphMap v;
    v.source = g2;
    v.target = m.target;
    for (const auto& [w, col] : g2.vertices) v.vmap[w] = m.vmap.at(w);
    for (const auto& [e, ends] : g2.edges) v.emap[e] = m.emap.at(e);
    return {std::move(d), std::move(c), std::move(v)};
}

GraphMap compose_maps(const GraphMap& f, const GraphMap& g) {
    if (!(f.target == g.source)) throw CompositionMismatch("graph maps do not compose");
    GraphMap h;
    h.source = f.source;
    h.target = g.target;
    for (const auto& [v, w] : f.vmap) h.vmap[v] = g.vmap.at(w);
    for (const auto& [e, img] : f.emap) {
        if (img.collapsed)
            h.emap[e] = EdgeImage::vertex(g.vmap.at(img.id));
        else
            h.emap[e] = g.emap.at(img.id);
    }
    return h;
}

}  // namespace shadowcalc
