#include "shadowcalc/labeled_graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace shadowcalc {

ValidationReport validate_labeled(const LabeledGraph& g) {
    ValidationReport r = validate_graph(g.graph);
    if (!r.valid()) return r;
    std::vector<VertexId> ivs = g.graph.internal_whites();
    std::set<VertexId> iv_set(ivs.begin(), ivs.end());
    for (const auto& [e, ends] : g.graph.edges)
        if (!g.edge_label.count(e)) r.add("MissingEdgeLabel", "edge " + std::to_string(e));
    for (VertexId v : ivs) {
        auto it = g.orient.find(v);
        if (it == g.orient.end()) {
            r.add("MissingOrientation", "vertex " + std::to_string(v));
            continue;
        }
        const auto& o = it->second;
        if (o.src == o.tgt) r.add("OrientationLoop", "vertex " + std::to_string(v));
        auto inc = g.graph.incident_edges(v);
        if (std::find(inc.begin(), inc.end(), o.src) == inc.end() ||
            std::find(inc.begin(), inc.end(), o.tgt) == inc.end())
            r.add("OrientationNotIncident", "vertex " + std::to_string(v));
        if (!g.vertex_label.count(v)) r.add("MissingVertexLabel", "vertex " + std::to_string(v));
    }
    for (const auto& [v, o] : g.orient)
        if (!iv_set.count(v)) r.add("OrientationOnNonInternal", "vertex " + std::to_string(v));
    for (const auto& [v, m] : g.vertex_label)
        if (!iv_set.count(v)) r.add("LabelOnNonInternal", "vertex " + std::to_string(v));
    if (!r.valid()) return r;
    // chain consistency: an edge joining two internal whites is the target of
    // one exactly when it is the source of the other
    for (const auto& [e, ends] : g.graph.edges) {
        VertexId a = ends.first, b = ends.second;
        if (iv_set.count(a) && iv_set.count(b)) {
            const auto& oa = g.orient.at(a);
            const auto& ob = g.orient.at(b);
            bool ok = (oa.src == e && ob.tgt == e) || (oa.tgt == e && ob.src == e);
            if (!ok) r.add("OrientationChain", "edge " + std::to_string(e));
        }
    }
    for (VertexId v : ivs) {
        const auto& o = g.orient.at(v);
        const auto& m = g.vertex_label.at(v);
        if (!(m.dom == g.edge_label.at(o.src)) || !(m.cod == g.edge_label.at(o.tgt)))
            r.add("LabelTypeMismatch", "vertex " + std::to_string(v));
    }
    return r;
}

BaseObject ordered_product(const std::vector<BaseObject>& factors) {
    if (factors.empty()) return star();
    if (factors.size() == 1) return factors[0];
    return product(factors);
}

namespace {

Elem product_coord(const std::vector<EdgeId>& edges_asc, const Elem& value, EdgeId at) {
    if (edges_asc.size() == 1) return value;
    auto it = std::find(edges_asc.begin(), edges_asc.end(), at);
    return value.parts()[static_cast<std::size_t>(it - edges_asc.begin())];
}

Elem product_make(const std::vector<EdgeId>& edges_asc, const std::map<EdgeId, Elem>& coords) {
    if (edges_asc.empty()) return star_elem();
    if (edges_asc.size() == 1) return coords.at(edges_asc[0]);
    std::vector<Elem> parts;
    parts.reserve(edges_asc.size());
    for (EdgeId e : edges_asc) parts.push_back(coords.at(e));
    return Elem::tuple(std::move(parts));
}

// A component of the vertex preimage of an internal white: a composable
// string of internal whites with its boundary edges and composite label.
struct PreimageString {
    std::vector<VertexId> chain;
    EdgeId src_edge = 0;
    EdgeId tgt_edge = 0;
    BaseMap composite;
};

std::vector<PreimageString> preimage_strings(const LabeledGraphMap& m, VertexId target_vertex) {
    std::vector<VertexId> pre;
    for (const auto& [v, w] : m.underlying.vmap)
        if (w == target_vertex) pre.push_back(v);
    std::set<EdgeId> collapsed;
    for (const auto& [e, img] : m.underlying.emap)
        if (img.collapsed && img.id == target_vertex) collapsed.insert(e);

    std::vector<PreimageString> out;
    std::set<VertexId> used;
    for (VertexId start : pre) {
        if (used.count(start)) continue;
        // find the head of the chain containing start
        VertexId head = start;
        for (;;) {
            EdgeId e = m.source.orient.at(head).src;
            if (!collapsed.count(e)) break;
            auto ends = m.source.graph.edges.at(e);
            VertexId prev = ends.first == head ? ends.second : ends.first;
            if (prev == head || used.count(prev)) throw InvalidMorphism("cyclic vertex preimage");
            head = prev;
        }
        PreimageString s;
        VertexId cur = head;
        for (;;) {
            used.insert(cur);
            s.chain.push_back(cur);
            EdgeId t = m.source.orient.at(cur).tgt;
            if (!collapsed.count(t)) break;
            auto ends = m.source.graph.edges.at(t);
            cur = ends.first == cur ? ends.second : ends.first;
        }
        s.src_edge = m.source.orient.at(s.chain.front()).src;
        s.tgt_edge = m.source.orient.at(s.chain.back()).tgt;
        s.composite = m.source.vertex_label.at(s.chain.front());
        for (std::size_t i = 1; i < s.chain.size(); ++i)
            s.composite = compose(s.composite, m.source.vertex_label.at(s.chain[i]));
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

LabeledGraphMap LabeledGraphMap::identity(const LabeledGraph& g) {
    LabeledGraphMap m;
    m.source = g;
    m.target = g;
    m.underlying = GraphMap::identity(g.graph);
    for (const auto& [e, lab] : g.edge_label) m.iota.emplace(e, BaseMap::identity(lab));
    return m;
}

std::vector<EdgeId> LabeledGraphMap::edge_preimages(EdgeId target_edge) const {
    std::vector<EdgeId> out;
    for (const auto& [e, img] : underlying.emap)
        if (!img.collapsed && img.id == target_edge) out.push_back(e);
    return out;
}

BaseObject LabeledGraphMap::iota_codomain(EdgeId target_edge) const {
    std::vector<BaseObject> fs;
    for (EdgeId e : edge_preimages(target_edge)) fs.push_back(source.edge_label.at(e));
    return ordered_product(fs);
}

ValidationReport validate_labeled_map(const LabeledGraphMap& m) {
    ValidationReport r;
    auto rs = validate_labeled(m.source);
    auto rt = validate_labeled(m.target);
    for (auto& i : rs.issues) r.add("Source" + i.code, i.detail);
    for (auto& i : rt.issues) r.add("Target" + i.code, i.detail);
    if (!(m.underlying.source == m.source.graph) || !(m.underlying.target == m.target.graph))
        r.add("UnderlyingMismatch", "graph map endpoints disagree with the labeled graphs");
    if (!r.valid()) return r;
    auto ru = validate_map(m.underlying);
    for (auto& i : ru.issues) r.add(i.code, i.detail);
    if (!r.valid()) return r;

    // orientation square; an orientation edge may collapse onto the image
    // vertex when the vertex sits inside a preimage string
    for (VertexId v : m.source.graph.internal_whites()) {
        VertexId w = m.underlying.vmap.at(v);
        if (!m.target.graph.is_internal_white(w)) continue;
        const auto& ov = m.source.orient.at(v);
        const auto& ow = m.target.orient.at(w);
        auto se = m.underlying.emap.at(ov.src);
        auto te = m.underlying.emap.at(ov.tgt);
        bool src_ok = se.collapsed ? se.id == w : se.id == ow.src;
        bool tgt_ok = te.collapsed ? te.id == w : te.id == ow.tgt;
        if (!src_ok || !tgt_ok) r.add("OrientationSquare", "vertex " + std::to_string(v));
    }

    // iota shape and bijectivity
    for (const auto& [e, lab] : m.target.edge_label) {
        auto it = m.iota.find(e);
        if (it == m.iota.end()) {
            r.add("MissingIota", "edge " + std::to_string(e));
            continue;
        }
        const BaseMap& io = it->second;
        if (!(io.dom == lab)) r.add("IotaDomain", "edge " + std::to_string(e));
        BaseObject expect = m.iota_codomain(e);
        if (!(io.cod == expect)) r.add("IotaCodomain", "edge " + std::to_string(e));
        else if (!io.is_bijective()) r.add("IotaNotBijective", "edge " + std::to_string(e));
        if (m.edge_preimages(e).empty() && !(lab == star()))
            r.add("EmptyPreimageLabel", "edge " + std::to_string(e) + " must carry the singleton label");
    }
    if (!r.valid()) return r;

    // identification square, one check per target internal white and
    // preimage string, matched through first edges
    for (VertexId w : m.target.graph.internal_whites()) {
        const auto& ow = m.target.orient.at(w);
        std::vector<EdgeId> pre_s = m.edge_preimages(ow.src);
        std::vector<EdgeId> pre_t = m.edge_preimages(ow.tgt);
        std::vector<PreimageString> strs;
        try {
            strs = preimage_strings(m, w);
        } catch (const Error&) {
            r.add("IdentificationSquare", "cyclic preimage at vertex " + std::to_string(w));
            continue;
        }
        std::map<EdgeId, const PreimageString*> by_src, by_tgt;
        bool shape_ok = strs.size() == pre_s.size() && strs.size() == pre_t.size();
        for (const auto& s : strs) {
            if (std::find(pre_s.begin(), pre_s.end(), s.src_edge) == pre_s.end() ||
                std::find(pre_t.begin(), pre_t.end(), s.tgt_edge) == pre_t.end())
                shape_ok = false;
            by_src[s.src_edge] = &s;
            by_tgt[s.tgt_edge] = &s;
        }
        if (!shape_ok || by_src.size() != strs.size() || by_tgt.size() != strs.size()) {
            r.add("IdentificationSquare", "preimage strings of vertex " + std::to_string(w) +
                                              " do not match the edge preimages");
            continue;
        }
        const BaseMap& is = m.iota.at(ow.src);
        const BaseMap& it = m.iota.at(ow.tgt);
        const BaseMap& bw = m.target.vertex_label.at(w);
        for (const Elem& x : is.dom.elems) {
            Elem lhs = it(bw(x));
            Elem src_val = is(x);
            std::map<EdgeId, Elem> coords;
            for (EdgeId f : pre_t) {
                const PreimageString* s = by_tgt.at(f);
                coords[f] = s->composite(product_coord(pre_s, src_val, s->src_edge));
            }
            if (!(lhs == product_make(pre_t, coords))) {
                r.add("IdentificationSquare", "vertex " + std::to_string(w) + " at " + x.str());
                break;
            }
        }
    }
    return r;
}

LabeledGraphMap compose_labeled(const LabeledGraphMap& f, const LabeledGraphMap& g) {
    if (!(f.target == g.source)) throw CompositionMismatch("labeled graph maps do not compose");
    LabeledGraphMap h;
    h.source = f.source;
    h.target = g.target;
    h.underlying = compose_maps(f.underlying, g.underlying);
    for (const auto& [e, lab] : g.target.edge_label) {
        std::vector<EdgeId> mids = g.edge_preimages(e);
        std::vector<EdgeId> total = h.edge_preimages(e);
        BaseObject cod = [&] {
            std::vector<BaseObject> fs;
            for (EdgeId t : total) fs.push_back(f.source.edge_label.at(t));
            return ordered_product(fs);
        }();
        std::map<Elem, Elem> fn;
        const BaseMap& ig = g.iota.at(e);
        for (const Elem& x : lab.elems) {
            Elem mid = ig(x);
            std::map<EdgeId, Elem> coords;
            for (EdgeId t : mids) {
                Elem part = product_coord(mids, mid, t);
                Elem fine = f.iota.at(t)(part);
                std::vector<EdgeId> fine_ids = f.edge_preimages(t);
                for (EdgeId u : fine_ids) coords[u] = product_coord(fine_ids, fine, u);
            }
            fn[x] = product_make(total, coords);
        }
        h.iota.emplace(e, BaseMap(lab, cod, std::move(fn)));
    }
    return h;
}

Constellation maximal_cut(const LabeledGraph& g) {
    // merge blacks along black-black edges, least id as representative
    std::map<VertexId, VertexId> rep;
    for (const auto& [v, c] : g.graph.vertices)
        if (c == Color2::Black) rep[v] = v;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (rep.at(v) != v) v = rep[v] = rep.at(rep.at(v));
        return v;
    };
    for (const auto& [e, ends] : g.graph.edges) {
        if (g.graph.is_black(ends.first) && g.graph.is_black(ends.second)) {
            VertexId a = find(ends.first), b = find(ends.second);
            if (a != b) rep[std::max(a, b)] = std::min(a, b);
        }
    }

    Constellation c;
    VertexId fresh = 0;
    for (const auto& [v, col] : g.graph.vertices) fresh = std::max(fresh, v + 1);

    for (const auto& [v, col] : g.graph.vertices) {
        if (col == Color2::Black) {
            c.merged_black[v] = find(v);
            c.graph.graph.vertices[find(v)] = Color2::Black;
        } else if (g.graph.is_external_white(v)) {
            c.graph.graph.vertices[v] = Color2::White;
        }
    }
    for (const auto& [e, ends] : g.graph.edges) {
        bool b1 = g.graph.is_black(ends.first), b2 = g.graph.is_black(ends.second);
        if (b1 && b2) continue;  // collapsed
        bool i1 = g.graph.is_internal_white(ends.first), i2 = g.graph.is_internal_white(ends.second);
        if (i1 && i2) continue;  // deleted
        auto place = [&](VertexId v, bool internal, int end) -> VertexId {
            if (g.graph.is_black(v)) return find(v);
            if (!internal) return v;
            VertexId cap = fresh++;
            c.graph.graph.vertices[cap] = Color2::White;
            c.cap_origin[cap] = {e, end};
            return cap;
        };
        VertexId a = place(ends.first, i1, 0);
        VertexId b = place(ends.second, i2, 1);
        c.graph.graph.edges[e] = {a, b};
        c.graph.edge_label[e] = g.edge_label.at(e);
    }

    auto comp = c.graph.graph.components();
    std::map<VertexId, int> star_id;  // component representative -> ordinal
    for (const auto& [v, root] : comp) {
        if (c.graph.graph.is_black(v) && !star_id.count(root)) {
            int id = static_cast<int>(star_id.size());
            star_id[root] = id;
        }
    }
    c.star_count = static_cast<int>(star_id.size());
    for (const auto& [v, root] : comp)
        if (star_id.count(root)) c.star_of_vertex[v] = star_id.at(root);
    for (const auto& [e, ends] : c.graph.graph.edges)
        if (c.star_of_vertex.count(ends.first)) c.star_of_edge[e] = c.star_of_vertex.at(ends.first);
    return c;
}

LabeledGraph cut_along(const LabeledGraph& g, const std::vector<VertexId>& T) {
    std::set<VertexId> cut(T.begin(), T.end());
    for (VertexId v : T)
        if (!g.graph.is_internal_white(v)) throw NotInternalWhite("vertex " + std::to_string(v));
    LabeledGraph out;
    VertexId fresh = 0;
    for (const auto& [v, col] : g.graph.vertices) fresh = std::max(fresh, v + 1);
    for (const auto& [v, col] : g.graph.vertices)
        if (!cut.count(v)) out.graph.vertices[v] = col;
    for (const auto& [e, ends] : g.graph.edges) {
        if (cut.count(ends.first) && cut.count(ends.second)) continue;
        auto place = [&](VertexId v) -> VertexId {
            if (!cut.count(v)) return v;
            VertexId cap = fresh++;
            out.graph.vertices[cap] = Color2::White;
            return cap;
        };
        out.graph.edges[e] = {place(ends.first), place(ends.second)};
        out.edge_label[e] = g.edge_label.at(e);
    }
    for (const auto& [v, o] : g.orient)
        if (out.graph.vertices.count(v) && out.graph.is_internal_white(v)) {
            out.orient[v] = o;
            out.vertex_label.emplace(v, g.vertex_label.at(v));
        }
    return out;
}

std::map<int, int> pi0_psi(const LabeledGraphMap& m) {
    Constellation sc = maximal_cut(m.source);
    Constellation tc = maximal_cut(m.target);
    std::map<int, int> out;
    for (const auto& [v, col] : m.source.graph.vertices) {
        if (col != Color2::Black) continue;
        int su = sc.star_of_vertex.at(sc.merged_black.at(v));
        VertexId w = m.underlying.vmap.at(v);
        int tu = tc.star_of_vertex.at(tc.merged_black.at(w));
        auto [it, inserted] = out.emplace(su, tu);
        if (!inserted && it->second != tu) throw InvalidMorphism("cut components do not map consistently");
    }
    return out;
}

bool is_inert(const LabeledGraphMap& m) { return inert_constellation_bijection(m).has_value(); }

std::optional<std::map<EdgeId, EdgeId>> inert_constellation_bijection(const LabeledGraphMap& m) {
    auto report = validate_labeled_map(m);
    if (!report.valid()) throw InvalidMorphism("is_inert: " + report.issues.front().code);

    // every edge identification is trivial
    for (const auto& [e, lab] : m.target.edge_label) {
        auto pre = m.edge_preimages(e);
        if (pre.size() > 1) return std::nullopt;
        if (pre.size() == 1 && !m.iota.at(e).is_identity()) return std::nullopt;
    }

    Constellation sc = maximal_cut(m.source);
    Constellation tc = maximal_cut(m.target);
    if (sc.star_count != tc.star_count) return std::nullopt;
    std::map<int, int> stars;
    try {
        stars = pi0_psi(m);
    } catch (const Error&) {
        return std::nullopt;
    }
    {
        std::set<int> img;
        for (const auto& [s, t] : stars) img.insert(t);
        if (img.size() != static_cast<std::size_t>(tc.star_count)) return std::nullopt;
    }
    std::map<EdgeId, EdgeId> counterpart;

    // walk each source star edge across darkened whites to its counterpart
    auto is_star_edge_target = [&](EdgeId e) { return tc.star_of_edge.count(e) != 0; };
    std::set<EdgeId> seen;
    for (const auto& [e, star] : sc.star_of_edge) {
        // the white end of e in the source graph
        auto ends = m.source.graph.edges.at(e);
        VertexId white = m.source.graph.is_black(ends.first) ? ends.second : ends.first;
        EdgeId cur = e;
        VertexId front = white;
        bool ok = false;
        for (int guard = 0; guard <= static_cast<int>(m.source.graph.edges.size()); ++guard) {
            auto img = m.underlying.emap.at(cur);
            if (!img.collapsed) {
                auto tends = m.target.graph.edges.at(img.id);
                bool tb1 = m.target.graph.is_black(tends.first), tb2 = m.target.graph.is_black(tends.second);
                if (tb1 != tb2 && is_star_edge_target(img.id)) {
                    // survived with exactly one black end: the counterpart
                    if (seen.count(img.id)) return std::nullopt;
                    seen.insert(img.id);
                    if (tc.star_of_edge.at(img.id) != stars.at(star)) return std::nullopt;
                    if (!(m.target.edge_label.at(img.id) == m.source.edge_label.at(e))) return std::nullopt;
                    counterpart[e] = img.id;
                    ok = true;
                    break;
                }
            }
            // cross the darkened white at the front of the walk; only
            // identity-labeled vertices may be consumed by an inert map
            if (!m.source.graph.is_internal_white(front)) return std::nullopt;
            if (!m.source.vertex_label.at(front).is_identity()) return std::nullopt;
            auto inc = m.source.graph.incident_edges(front);
            if (inc.size() != 2) return std::nullopt;
            EdgeId next = inc[0] == cur ? inc[1] : inc[0];
            if (next == cur) return std::nullopt;
            auto nends = m.source.graph.edges.at(next);
            front = nends.first == front ? nends.second : nends.first;
            cur = next;
        }
        if (!ok) return std::nullopt;
    }
    if (seen.size() != tc.star_of_edge.size()) return std::nullopt;
    return counterpart;
}

ValidationReport validate_cut_set(const GraphDiagram& diagram,
                                  const std::map<int, std::vector<VertexId>>& cut_sets) {
    ValidationReport r;
    for (const auto& [i, g] : diagram.objects) {
        auto it = cut_sets.find(i);
        if (it == cut_sets.end()) {
            r.add("MissingCutSet", "object " + std::to_string(i));
            continue;
        }
        for (VertexId v : it->second)
            if (!g.graph.is_internal_white(v))
                r.add("NotInternalWhite", "object " + std::to_string(i) + " vertex " + std::to_string(v));
    }
    if (!r.valid()) return r;
    for (const auto& [aid, arrow] : diagram.arrows) {
        const auto& [si, ti, m] = arrow;
        std::set<VertexId> src(cut_sets.at(si).begin(), cut_sets.at(si).end());
        std::set<VertexId> tgt(cut_sets.at(ti).begin(), cut_sets.at(ti).end());
        for (const auto& [v, col] : m.source.graph.vertices) {
            if (!m.source.graph.is_internal_white(v)) continue;
            bool in_src = src.count(v) != 0;
            bool hits_tgt = tgt.count(m.underlying.vmap.at(v)) != 0;
            if (in_src != hits_tgt)
                r.add("CutSetMismatch",
                      "arrow " + std::to_string(aid) + " vertex " + std::to_string(v));
        }
    }
    return r;
}

DisjointUnion disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
    DisjointUnion u;
    u.graph = a;
    VertexId vfresh = 0;
    EdgeId efresh = 0;
    for (const auto& [v, c] : a.graph.vertices) vfresh = std::max(vfresh, v + 1);
    for (const auto& [e, ends] : a.graph.edges) efresh = std::max(efresh, e + 1);
    for (const auto& [v, c] : b.graph.vertices) u.right_vertex[v] = vfresh++;
    for (const auto& [e, ends] : b.graph.edges) u.right_edge[e] = efresh++;
    for (const auto& [v, c] : b.graph.vertices) u.graph.graph.vertices[u.right_vertex.at(v)] = c;
    for (const auto& [e, ends] : b.graph.edges) {
        u.graph.graph.edges[u.right_edge.at(e)] = {u.right_vertex.at(ends.first), u.right_vertex.at(ends.second)};
        u.graph.edge_label[u.right_edge.at(e)] = b.edge_label.at(e);
    }
    for (const auto& [v, o] : b.orient)
        u.graph.orient[u.right_vertex.at(v)] = {u.right_edge.at(o.src), u.right_edge.at(o.tgt)};
    for (const auto& [v, m] : b.vertex_label) u.graph.vertex_label.emplace(u.right_vertex.at(v), m);
    return u;
}

}  // namespace shadowcalc
