#include "shadowcalc/coloring.hpp"

#include <algorithm>
#include <set>

namespace shadowcalc {

Coloring Coloring::all_white(const LabeledGraph& g) {
    Coloring c;
    for (VertexId v : g.graph.internal_whites()) c.shades[v] = Color3::White;
    return c;
}

Color3 shade_of(const LabeledGraph& g, const Coloring& c, VertexId v) {
    if (g.graph.is_black(v)) return Color3::Black;
    if (g.graph.is_external_white(v)) return Color3::White;
    return c.at(v);
}

void require_same_graph(const LabeledGraph& g, const Coloring& c, const Coloring& d) {
    auto ivs = g.graph.internal_whites();
    auto check = [&](const Coloring& x) {
        if (x.shades.size() != ivs.size()) throw GraphMismatch("coloring does not match the graph");
        for (VertexId v : ivs)
            if (!x.shades.count(v)) throw GraphMismatch("coloring missing vertex " + std::to_string(v));
    };
    check(c);
    check(d);
}

bool grayer_leq(const LabeledGraph& g, const Coloring& c, const Coloring& d) {
    require_same_graph(g, c, d);
    for (const auto& [v, cv] : c.shades) {
        Color3 dv = d.shades.at(v);
        if (cv != dv && dv != Color3::Gray) return false;
    }
    return true;
}

bool darker_leq(const LabeledGraph& g, const Coloring& c, const Coloring& d) {
    require_same_graph(g, c, d);
    auto rank = [](Color3 x) { return x == Color3::White ? 0 : x == Color3::Gray ? 1 : 2; };
    for (const auto& [v, cv] : c.shades)
        if (rank(d.shades.at(v)) < rank(cv)) return false;
    return true;
}

Coloring common_graying(const LabeledGraph& g, const Coloring& c, const Coloring& d) {
    require_same_graph(g, c, d);
    Coloring out;
    for (const auto& [v, cv] : c.shades) out.shades[v] = cv == d.shades.at(v) ? cv : Color3::Gray;
    return out;
}

const GrayEdge& GrayEdgeSet::by_rep(EdgeId rep) const {
    for (const auto& s : edges)
        if (s.rep == rep) return s;
    throw ShapeMismatch("no gray edge with representative " + std::to_string(rep));
}

const GrayEdge* GrayEdgeSet::containing(EdgeId e) const {
    for (const auto& s : edges)
        if (std::find(s.edges.begin(), s.edges.end(), e) != s.edges.end()) return &s;
    return nullptr;
}

std::vector<EdgeId> GrayEdgeSet::reps() const {
    std::vector<EdgeId> out;
    out.reserve(edges.size());
    for (const auto& s : edges) out.push_back(s.rep);
    return out;
}

namespace {

// Order a string's edges by the orientations of its interior vertices and
// return them first-edge first. `path` is in walk order with interior
// vertices between consecutive edges.
std::vector<EdgeId> orient_string(const LabeledGraph& g, const std::vector<EdgeId>& path,
                                  const std::vector<VertexId>& interior) {
    if (interior.empty() || g.orient.at(interior.front()).src == path.front()) return path;
    std::vector<EdgeId> rev(path.rbegin(), path.rend());
    return rev;
}

}  // namespace

GrayEdgeSet gray_edges(const LabeledGraph& g, const Coloring& c) {
    auto shade = [&](VertexId v) { return shade_of(g, c, v); };
    GrayEdgeSet out;
    std::set<EdgeId> used;

    for (const auto& [e0, ends0] : g.graph.edges) {
        if (used.count(e0)) continue;
        Color3 s1 = shade(ends0.first), s2 = shade(ends0.second);
        bool g1 = s1 == Color3::Gray, g2 = s2 == Color3::Gray;
        if (!g1 && !g2) {
            if ((s1 == Color3::White) != (s2 == Color3::White)) {
                used.insert(e0);
                out.edges.push_back({{e0}, e0, false});
            }
            continue;
        }
        // expand through gray vertices in both directions
        auto walk = [&](VertexId from, std::vector<EdgeId>& edges_out, std::vector<VertexId>& ivs_out) {
            VertexId cur = from;
            EdgeId cur_edge = e0;
            while (shade(cur) == Color3::Gray) {
                ivs_out.push_back(cur);
                auto inc = g.graph.incident_edges(cur);
                EdgeId next = inc[0] == cur_edge ? inc[1] : inc[0];
                edges_out.push_back(next);
                auto nends = g.graph.edges.at(next);
                cur = nends.first == cur ? nends.second : nends.first;
                cur_edge = next;
                if (next == e0) return true;  // closed up: all-gray cycle
            }
            return false;
        };
        std::vector<EdgeId> right_edges, left_edges;
        std::vector<VertexId> right_ivs, left_ivs;
        bool cycle = walk(ends0.second, right_edges, right_ivs);
        if (!cycle) walk(ends0.first, left_edges, left_ivs);

        GrayEdge s;
        if (cycle) {
            s.cycle = true;
            s.edges = {e0};
            s.edges.insert(s.edges.end(), right_edges.begin(), right_edges.end() - 1);
            // representative is the least edge id, rotated to the front along
            // the orientation
            EdgeId rep = *std::min_element(s.edges.begin(), s.edges.end());
            std::vector<EdgeId> ordered = orient_string(g, s.edges, right_ivs);
            auto it = std::find(ordered.begin(), ordered.end(), rep);
            std::rotate(ordered.begin(), it, ordered.end());
            s.edges = ordered;
            s.rep = rep;
            // admissible only when the labels around the cycle compose to an
            // identity
            BaseMap comp = BaseMap::identity(g.edge_label.at(rep));
            for (std::size_t i = 0; i < s.edges.size(); ++i) {
                EdgeId a = s.edges[i];
                EdgeId b = s.edges[(i + 1) % s.edges.size()];
                for (const auto& [v, o] : g.orient)
                    if (o.src == a && o.tgt == b) {
                        comp = compose(comp, g.vertex_label.at(v));
                        break;
                    }
            }
            if (!comp.is_identity())
                throw UnsupportedGrayCycle("all-gray cycle through edge " + std::to_string(rep) +
                                           " with non-identity composite label");
        } else {
            std::vector<EdgeId> path(left_edges.rbegin(), left_edges.rend());
            path.push_back(e0);
            path.insert(path.end(), right_edges.begin(), right_edges.end());
            std::vector<VertexId> interior(left_ivs.rbegin(), left_ivs.rend());
            interior.insert(interior.end(), right_ivs.begin(), right_ivs.end());
            s.edges = orient_string(g, path, interior);
            s.rep = s.edges.front();
        }
        used.insert(s.edges.begin(), s.edges.end());
        out.edges.push_back(std::move(s));
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const GrayEdge& a, const GrayEdge& b) { return a.rep < b.rep; });
    return out;
}

BaseMap path_label(const LabeledGraph& g, const GrayEdge& s, EdgeId to) {
    BaseMap comp = BaseMap::identity(g.edge_label.at(s.rep));
    if (to == s.rep) return comp;
    for (std::size_t i = 0; i + 1 < s.edges.size() || s.cycle; ++i) {
        EdgeId a = s.edges[i % s.edges.size()];
        EdgeId b = s.edges[(i + 1) % s.edges.size()];
        // the interior vertex between a and b
        auto ea = g.graph.edges.at(a);
        auto eb = g.graph.edges.at(b);
        VertexId join = (ea.first == eb.first || ea.first == eb.second) ? ea.first : ea.second;
        // with parallel edges both ends may touch; pick the one oriented a->b
        if (g.orient.count(join) == 0 || g.orient.at(join).src != a || g.orient.at(join).tgt != b) {
            VertexId other = join == ea.first ? ea.second : ea.first;
            if (g.orient.count(other) && g.orient.at(other).src == a && g.orient.at(other).tgt == b) join = other;
        }
        comp = compose(comp, g.vertex_label.at(join));
        if (b == to) return comp;
        if (i + 1 >= s.edges.size() * 2) break;
    }
    throw ShapeMismatch("edge " + std::to_string(to) + " not on the oriented path of its gray edge");
}

std::map<EdgeId, EdgeId> gray_edges_map(const LabeledGraph& g, const Coloring& src, const Coloring& dst) {
    if (!grayer_leq(g, src, dst)) throw OrderViolation("target coloring is not grayer");
    GrayEdgeSet s = gray_edges(g, src);
    GrayEdgeSet d = gray_edges(g, dst);
    std::map<EdgeId, EdgeId> out;
    for (const auto& se : s.edges) {
        const GrayEdge* cont = d.containing(se.rep);
        if (!cont) throw ShapeMismatch("gray edge lost under graying");
        out[se.rep] = cont->rep;
    }
    return out;
}

Coloring pullback_coloring(const LabeledGraphMap& h, const Coloring& c) {
    Coloring out;
    for (VertexId v : h.source.graph.internal_whites())
        out.shades[v] = shade_of(h.target, c, h.underlying.vmap.at(v));
    return out;
}

std::map<EdgeId, EdgeId> gray_edges_map_along(const LabeledGraphMap& h, const Coloring& c) {
    Coloring hc = pullback_coloring(h, c);
    GrayEdgeSet src = gray_edges(h.source, hc);
    GrayEdgeSet dst = gray_edges(h.target, c);
    std::map<EdgeId, EdgeId> out;
    for (const auto& se : src.edges) {
        const GrayEdge* cont = nullptr;
        for (EdgeId e : se.edges) {
            auto img = h.underlying.emap.at(e);
            if (!img.collapsed) {
                cont = dst.containing(img.id);
                break;
            }
        }
        if (!cont) throw ShapeMismatch("gray edge image vanished under the graph map");
        out[se.rep] = cont->rep;
    }
    return out;
}

bool check_pushout(const LabeledGraph& g, const Coloring& c, VertexId white_flip, VertexId black_flip) {
    if (c.at(white_flip) != Color3::White || c.at(black_flip) != Color3::Black)
        throw NotAFlipSquare("expected a white and a black vertex to flip");
    Coloring cv = c.with(white_flip, Color3::Gray);
    Coloring cw = c.with(black_flip, Color3::Gray);
    Coloring cb = cv.with(black_flip, Color3::Gray);

    auto mv = gray_edges_map(g, c, cv);
    auto mw = gray_edges_map(g, c, cw);
    auto mvb = gray_edges_map(g, cv, cb);
    auto mwb = gray_edges_map(g, cw, cb);

    // colimit classes of G(cv) + G(cw) over G(c)
    std::map<std::pair<int, EdgeId>, std::pair<int, EdgeId>> parent;
    std::function<std::pair<int, EdgeId>(std::pair<int, EdgeId>)> find =
        [&](std::pair<int, EdgeId> x) -> std::pair<int, EdgeId> {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) {
            parent[x] = x;
            return x;
        }
        auto r = find(it->second);
        parent[x] = r;
        return r;
    };
    auto unite = [&](std::pair<int, EdgeId> a, std::pair<int, EdgeId> b) {
        a = find(a);
        b = find(b);
        if (!(a == b)) parent[a] = b;
    };
    for (const auto& s : gray_edges(g, cv).edges) find({0, s.rep});
    for (const auto& s : gray_edges(g, cw).edges) find({1, s.rep});
    for (const auto& [s, tv] : mv) unite({0, tv}, {1, mw.at(s)});

    // the comparison into G(cb) must identify exactly the colimit classes
    std::map<std::pair<int, EdgeId>, EdgeId> value;
    std::map<EdgeId, int> hit;
    for (const auto& s : gray_edges(g, cb).edges) hit[s.rep] = 0;
    auto record = [&](std::pair<int, EdgeId> x, EdgeId target) {
        auto r = find(x);
        auto it = value.find(r);
        if (it == value.end()) {
            value[r] = target;
            ++hit.at(target);
        } else if (it->second != target) {
            hit[target] = -1000000;  // two classes collapse: not injective
        }
    };
    for (const auto& [s, t] : mvb) record({0, s}, t);
    for (const auto& [s, t] : mwb) record({1, s}, t);
    // injective on classes: distinct classes get distinct targets
    std::set<EdgeId> targets;
    for (const auto& [cls, t] : value)
        if (!targets.insert(t).second) return false;
    for (const auto& [t, n] : hit)
        if (n != 1) return false;
    return true;
}

CanonicalForm canonical_form(const LabeledGraph& g, const std::vector<ZigZagStep>& zigzag) {
    if (zigzag.empty()) throw ShapeMismatch("empty zig-zag");
    for (std::size_t i = 0; i + 1 < zigzag.size(); ++i)
        if (!darker_leq(g, zigzag[i].coloring, zigzag[i + 1].coloring))
            throw ShapeMismatch("zig-zag is not a monotone darkening");

    CanonicalForm out;
    out.lighter = zigzag.front().coloring;
    out.darker = zigzag.back().coloring;
    out.graying = common_graying(g, out.lighter, out.darker);

    // colimit of the zig-zag of gray edge sets
    using Node = std::pair<int, EdgeId>;  // (step index, rep)
    std::map<Node, Node> parent;
    std::function<Node(Node)> find = [&](Node x) -> Node {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) {
            parent[x] = x;
            return x;
        }
        auto r = find(it->second);
        parent[x] = r;
        return r;
    };
    auto unite = [&](Node a, Node b) {
        a = find(a);
        b = find(b);
        if (!(a == b)) parent[a] = b;
    };
    std::vector<GrayEdgeSet> sets;
    sets.reserve(zigzag.size());
    for (const auto& z : zigzag) sets.push_back(gray_edges(g, z.coloring));
    for (std::size_t i = 0; i < zigzag.size(); ++i)
        for (const auto& s : sets[i].edges) find({static_cast<int>(i), s.rep});
    for (std::size_t i = 0; i + 1 < zigzag.size(); ++i) {
        const Coloring& a = zigzag[i].coloring;
        const Coloring& b = zigzag[i + 1].coloring;
        if (grayer_leq(g, a, b)) {
            for (const auto& [s, t] : gray_edges_map(g, a, b)) unite({static_cast<int>(i), s}, {static_cast<int>(i) + 1, t});
        } else if (grayer_leq(g, b, a)) {
            for (const auto& [s, t] : gray_edges_map(g, b, a)) unite({static_cast<int>(i) + 1, s}, {static_cast<int>(i), t});
        } else {
            throw ShapeMismatch("consecutive colorings differ by more than one shade");
        }
    }

    // per-class glue value, and the class's target in G(graying)
    std::map<Node, int> class_value;
    std::map<Node, EdgeId> class_target;
    for (std::size_t i = 0; i < zigzag.size(); ++i) {
        auto to_graying = gray_edges_map(g, zigzag[i].coloring, out.graying);
        for (const auto& s : sets[i].edges) {
            Node r = find({static_cast<int>(i), s.rep});
            auto uit = zigzag[i].to_u.find(s.rep);
            if (uit == zigzag[i].to_u.end()) throw ShapeMismatch("zig-zag step missing a glue value");
            auto [vit, fresh] = class_value.emplace(r, uit->second);
            if (!fresh && vit->second != uit->second)
                throw InconsistentGlue("zig-zag maps disagree on a colimit class");
            EdgeId tgt = to_graying.at(s.rep);
            auto [tit, tfresh] = class_target.emplace(r, tgt);
            if (!tfresh && tit->second != tgt) throw PushoutFailure("colimit class hits two gray edges");
        }
    }
    std::set<EdgeId> covered;
    for (const auto& [cls, tgt] : class_target) {
        if (!covered.insert(tgt).second) throw PushoutFailure("two colimit classes hit one gray edge");
        out.glue[tgt] = class_value.at(cls);
    }
    for (const auto& s : gray_edges(g, out.graying).edges)
        if (!covered.count(s.rep)) throw PushoutFailure("gray edge not reached by the zig-zag colimit");
    return out;
}

ValidationReport validate_gigantic(const GiganticMorphism& m) {
    ValidationReport r;
    auto rg = validate_labeled_map(m.graph_map);
    for (auto& i : rg.issues) r.add(i.code, i.detail);
    if (!(m.graph_map.source == m.dom.graph) || !(m.graph_map.target == m.cod.graph))
        r.add("GiganticEndpoints", "graph map does not match the objects");
    if (!r.valid()) return r;
    for (int u : m.dom.universe)
        if (!m.set_map.count(u)) r.add("SetMapMissing", "component " + std::to_string(u));
    for (const auto& [u, v] : m.set_map)
        if (std::find(m.cod.universe.begin(), m.cod.universe.end(), v) == m.cod.universe.end())
            r.add("SetMapRange", "component " + std::to_string(v));
    if (!r.valid()) return r;

    Coloring hd = pullback_coloring(m.graph_map, m.cod.coloring);
    if (!darker_leq(m.dom.graph, m.dom.coloring, hd)) {
        r.add("NotDarker", "pullback coloring is not darker than the source coloring");
        return r;
    }
    Coloring gr = common_graying(m.dom.graph, m.dom.coloring, hd);
    GrayEdgeSet grs = gray_edges(m.dom.graph, gr);
    for (const auto& s : grs.edges)
        if (!m.glue.count(s.rep)) r.add("GlueMissing", "gray edge " + std::to_string(s.rep));
    if (!r.valid()) return r;

    for (const auto& [s, t] : gray_edges_map(m.dom.graph, m.dom.coloring, gr))
        if (m.glue.at(t) != m.set_map.at(m.dom.glue.at(s)))
            r.add("GlueSquare", "gray edge " + std::to_string(s) + " from the source");
    auto hd_to_gr = gray_edges_map(m.dom.graph, hd, gr);
    auto along = gray_edges_map_along(m.graph_map, m.cod.coloring);
    for (const auto& [s, t] : hd_to_gr)
        if (m.glue.at(t) != m.cod.glue.at(along.at(s)))
            r.add("GlueSquare", "gray edge " + std::to_string(s) + " from the pullback");
    return r;
}

GiganticMorphism gigantic_identity(const GiganticObject& x) {
    GiganticMorphism m;
    m.dom = x;
    m.cod = x;
    for (int u : x.universe) m.set_map[u] = u;
    m.graph_map = LabeledGraphMap::identity(x.graph);
    m.glue = x.glue;
    return m;
}

GiganticMorphism compose_gigantic(const GiganticMorphism& m1, const GiganticMorphism& m2) {
    if (!(m1.cod == m2.dom)) throw CompositionMismatch("gigantic morphisms do not compose");
    GiganticMorphism m;
    m.dom = m1.dom;
    m.cod = m2.cod;
    for (const auto& [u, v] : m1.set_map) m.set_map[u] = m2.set_map.at(v);
    m.graph_map = compose_labeled(m1.graph_map, m2.graph_map);

    const LabeledGraph& g = m1.dom.graph;
    const Coloring& c = m1.dom.coloring;
    Coloring hd = pullback_coloring(m1.graph_map, m2.dom.coloring);
    Coloring hje = pullback_coloring(m.graph_map, m2.cod.coloring);
    Coloring target = common_graying(g, c, hje);

    // seed glue values through both halves of the pushout
    std::map<EdgeId, int> values;
    auto put = [&](EdgeId rep, int v) {
        auto [it, fresh] = values.emplace(rep, v);
        if (!fresh && it->second != v) throw PushoutFailure("glue pushout is inconsistent");
    };
    Coloring chd = common_graying(g, c, hd);
    for (const auto& [s, t] : gray_edges_map(g, chd, target)) put(t, m2.set_map.at(m1.glue.at(s)));
    Coloring mid = common_graying(g, hd, hje);
    auto along = gray_edges_map_along(m1.graph_map, common_graying(m2.dom.graph, m2.dom.coloring,
                                                                   pullback_coloring(m2.graph_map, m2.cod.coloring)));
    for (const auto& [s, t] : gray_edges_map(g, mid, target)) put(t, m2.glue.at(along.at(s)));
    for (const auto& s : gray_edges(g, target).edges) {
        if (!values.count(s.rep)) throw PushoutFailure("glue pushout does not cover a gray edge");
        m.glue[s.rep] = values.at(s.rep);
    }
    return m;
}

GiganticObject embed_obj(const LabeledGraph& g) {
    GiganticObject x;
    x.graph = g;
    x.coloring = Coloring::all_white(g);
    Constellation cut = maximal_cut(g);
    for (int u = 0; u < cut.star_count; ++u) x.universe.push_back(u);
    for (const auto& s : gray_edges(g, x.coloring).edges) x.glue[s.rep] = cut.star_of_edge.at(s.rep);
    return x;
}

namespace {

// The star component of the target cut graph containing the image of a gray
// string of the source.
int target_star_of_string(const LabeledGraphMap& h, const Constellation& tc, const GrayEdge& s) {
    for (EdgeId e : s.edges) {
        auto img = h.underlying.emap.at(e);
        if (img.collapsed) {
            if (h.target.graph.is_black(img.id)) return tc.star_of_vertex.at(tc.merged_black.at(img.id));
            continue;
        }
        auto ends = h.target.graph.edges.at(img.id);
        if (h.target.graph.is_black(ends.first))
            return tc.star_of_vertex.at(tc.merged_black.at(ends.first));
        if (h.target.graph.is_black(ends.second))
            return tc.star_of_vertex.at(tc.merged_black.at(ends.second));
    }
    throw ShapeMismatch("gray edge image misses every star");
}

}  // namespace

GiganticMorphism embed(const LabeledGraphMap& h) {
    auto report = validate_labeled_map(h);
    if (!report.valid()) throw InvalidMorphism("embed: " + report.issues.front().code);
    GiganticMorphism m;
    m.dom = embed_obj(h.source);
    m.cod = embed_obj(h.target);
    m.set_map = pi0_psi(h);
    m.graph_map = h;
    Coloring gr = common_graying(h.source, m.dom.coloring, pullback_coloring(h, m.cod.coloring));
    Constellation tc = maximal_cut(h.target);
    for (const auto& s : gray_edges(h.source, gr).edges) m.glue[s.rep] = target_star_of_string(h, tc, s);
    return m;
}

}  // namespace shadowcalc
