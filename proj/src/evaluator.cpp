#include "shadowcalc/evaluator.hpp"

#include <algorithm>
#include <set>

namespace shadowcalc {

std::map<int, LabeledProduct> OperationPlan::source_stamp() const {
    if (steps.empty()) return {};
    return steps.front().before;
}

std::map<int, LabeledProduct> OperationPlan::target_stamp() const {
    if (steps.empty()) return {};
    return steps.back().after;
}

std::map<int, LabeledProduct> split_product(const LabeledProduct& p, const std::map<EdgeId, int>& glue,
                                            const std::vector<int>& comps) {
    std::map<int, LabeledProduct> out;
    for (int u : comps) out[u] = LabeledProduct::empty();
    for (const auto& [i, obj] : p.factors) out.at(glue.at(i)).factors[i] = obj;
    return out;
}

std::map<int, LabeledProductMap> split_lpm(const LabeledProductMap& f, const std::map<EdgeId, int>& glue_dom,
                                           const std::map<EdgeId, int>& glue_cod,
                                           const std::vector<int>& comps) {
    auto doms = split_product(f.dom, glue_dom, comps);
    auto cods = split_product(f.cod, glue_cod, comps);
    std::map<int, LabeledProductMap> out;
    for (int u : comps) {
        std::map<IndexId, IndexId> idx;
        std::map<IndexId, BaseMap> cmp;
        for (const auto& [i, obj] : cods.at(u).factors) {
            IndexId j = f.index_map.at(i);
            if (glue_dom.at(j) != u) throw ShapeMismatch("index map crosses components");
            idx[i] = j;
            cmp.emplace(i, f.component.at(i));
        }
        out.emplace(u, LabeledProductMap(doms.at(u), cods.at(u), std::move(idx), std::move(cmp)));
    }
    return out;
}

namespace {

// glue of a coloring between the source coloring and the graying, composed
// through the containment map
std::map<EdgeId, int> glue_through(const LabeledGraph& g, const Coloring& c, const Coloring& graying,
                                   const std::map<EdgeId, int>& graying_glue) {
    std::map<EdgeId, int> out;
    for (const auto& [s, t] : gray_edges_map(g, c, graying)) out[s] = graying_glue.at(t);
    return out;
}

}  // namespace

OperationPlan generator_decomposition(const GiganticMorphism& m) {
    auto report = validate_gigantic(m);
    if (!report.valid()) throw InvalidMorphism("generator_decomposition: " + report.issues.front().code);

    OperationPlan plan;
    const LabeledGraph& g = m.dom.graph;
    const Coloring& c = m.dom.coloring;
    Coloring hd = pullback_coloring(m.graph_map, m.cod.coloring);
    Coloring graying = common_graying(g, c, hd);
    const std::vector<int>& ucod = m.cod.universe;

    // stage 1: tensor along the component map
    {
        PlanStep st;
        st.kind = PlanStep::Kind::Tensor;
        st.sigma = m.set_map;
        st.cod_components = ucod;
        st.before = split_product(d_object(g, c), m.dom.glue, m.dom.universe);
        std::map<EdgeId, int> glue_after;
        for (const auto& [e, u] : m.dom.glue) glue_after[e] = m.set_map.at(u);
        st.after = split_product(d_object(g, c), glue_after, ucod);
        plan.steps.push_back(std::move(st));
    }

    std::map<EdgeId, int> cur_glue;
    for (const auto& [e, u] : m.dom.glue) cur_glue[e] = m.set_map.at(u);
    Coloring cur = c;

    // stage 2: white-to-gray pullbacks, ascending vertex order
    std::vector<VertexId> to_gray;
    for (const auto& [v, sh] : c.shades)
        if (sh == Color3::White && graying.at(v) == Color3::Gray) to_gray.push_back(v);
    for (VertexId v : to_gray) {
        Coloring next = cur.with(v, Color3::Gray);
        std::map<EdgeId, int> next_glue = glue_through(g, next, graying, [&] {
            std::map<EdgeId, int> gg;
            for (const auto& s : gray_edges(g, graying).edges) gg[s.rep] = m.glue.at(s.rep);
            return gg;
        }());
        PlanStep st;
        st.kind = PlanStep::Kind::Pull;
        LabeledProductMap f = d_arrow(g, next, cur);  // D(next) -> D(cur)
        st.maps = split_lpm(f, next_glue, cur_glue, ucod);
        st.before = split_product(f.cod, cur_glue, ucod);
        st.after = split_product(f.dom, next_glue, ucod);
        plan.steps.push_back(std::move(st));
        cur = next;
        cur_glue = std::move(next_glue);
    }

    // stage 3: gray-to-black pushforwards, ascending vertex order
    for (const auto& [v, sh] : graying.shades) {
        if (sh != Color3::Gray || hd.at(v) != Color3::Black) continue;
        Coloring next = cur.with(v, Color3::Black);
        std::map<EdgeId, int> next_glue = glue_through(g, next, graying, [&] {
            std::map<EdgeId, int> gg;
            for (const auto& s : gray_edges(g, graying).edges) gg[s.rep] = m.glue.at(s.rep);
            return gg;
        }());
        PlanStep st;
        st.kind = PlanStep::Kind::Push;
        LabeledProductMap f = d_arrow(g, cur, next);  // D(cur) -> D(next)
        st.maps = split_lpm(f, cur_glue, next_glue, ucod);
        st.before = split_product(f.dom, cur_glue, ucod);
        st.after = split_product(f.cod, next_glue, ucod);
        plan.steps.push_back(std::move(st));
        cur = next;
        cur_glue = std::move(next_glue);
    }

    // stage 4: pullback along the graph map
    {
        if (!(cur == hd)) throw ShapeMismatch("stages did not reach the pullback coloring");
        LabeledProductMap f = d_along_graphmap(m.graph_map, m.cod.coloring);  // D_target(d) -> D_source(h*d)
        PlanStep st;
        st.kind = PlanStep::Kind::GraphPull;
        st.maps = split_lpm(f, m.cod.glue, cur_glue, ucod);
        st.before = split_product(f.cod, cur_glue, ucod);
        st.after = split_product(f.dom, m.cod.glue, ucod);
        plan.steps.push_back(std::move(st));
    }
    return plan;
}

OperationPlan plan_from(const LabeledGraphMap& m) { return generator_decomposition(embed(m)); }

template <class B>
AssignmentT<typename B::Obj> evaluate(const OperationPlan& plan, const AssignmentT<typename B::Obj>& a) {
    AssignmentT<typename B::Obj> cur = a;
    for (const auto& st : plan.steps) {
        for (const auto& [u, base] : st.before) {
            auto it = cur.comp.find(u);
            if (it == cur.comp.end() || !(B::base_of(it->second) == base))
                throw StampMismatch("component " + std::to_string(u) + " does not match the plan stamp");
        }
        if (cur.comp.size() != st.before.size()) throw StampMismatch("component set does not match the plan");
        if (st.kind == PlanStep::Kind::Tensor) {
            cur.comp = B::tensor(st.sigma, st.cod_components, cur.comp);
        } else if (st.kind == PlanStep::Kind::Push) {
            std::map<int, typename B::Obj> next;
            for (const auto& [u, f] : st.maps) next.emplace(u, B::push(f, cur.comp.at(u)));
            cur.comp = std::move(next);
        } else {
            std::map<int, typename B::Obj> next;
            for (const auto& [u, f] : st.maps) next.emplace(u, B::pull(f, cur.comp.at(u)));
            cur.comp = std::move(next);
        }
    }
    return cur;
}

template <class B>
std::map<int, typename B::Map> evaluate_map(const OperationPlan& plan,
                                            const std::map<int, typename B::Map>& ms) {
    std::map<int, typename B::Map> cur = ms;
    for (const auto& st : plan.steps) {
        if (st.kind == PlanStep::Kind::Tensor) {
            cur = B::tensor_map(st.sigma, st.cod_components, cur);
        } else if (st.kind == PlanStep::Kind::Push) {
            std::map<int, typename B::Map> next;
            for (const auto& [u, f] : st.maps) next.emplace(u, B::push_map(f, cur.at(u)));
            cur = std::move(next);
        } else {
            std::map<int, typename B::Map> next;
            for (const auto& [u, f] : st.maps) next.emplace(u, B::pull_map(f, cur.at(u)));
            cur = std::move(next);
        }
    }
    return cur;
}

template AssignmentT<Family> evaluate<FamilyBackend>(const OperationPlan&, const AssignmentT<Family>&);
template AssignmentT<MatrixObject> evaluate<MatrixBackend>(const OperationPlan&,
                                                           const AssignmentT<MatrixObject>&);
template std::map<int, FamilyMap> evaluate_map<FamilyBackend>(const OperationPlan&,
                                                              const std::map<int, FamilyMap>&);
template std::map<int, MatrixMap> evaluate_map<MatrixBackend>(const OperationPlan&,
                                                              const std::map<int, MatrixMap>&);

LabeledGraph make_path(const std::vector<Color2>& colors, const std::vector<BaseObject>& edge_labels,
                       const std::map<VertexId, BaseMap>& vertex_labels) {
    if (edge_labels.size() + 1 != colors.size()) throw ShapeMismatch("path shape");
    LabeledGraph g;
    for (std::size_t v = 0; v < colors.size(); ++v) g.graph.vertices[static_cast<VertexId>(v)] = colors[v];
    for (std::size_t e = 0; e < edge_labels.size(); ++e) {
        g.graph.edges[static_cast<EdgeId>(e)] = {static_cast<VertexId>(e), static_cast<VertexId>(e + 1)};
        g.edge_label[static_cast<EdgeId>(e)] = edge_labels[e];
    }
    for (VertexId v : g.graph.internal_whites()) {
        g.orient[v] = {v - 1, v};
        auto it = vertex_labels.find(v);
        g.vertex_label.emplace(v, it != vertex_labels.end() ? it->second
                                                            : BaseMap::identity(g.edge_label.at(v - 1)));
    }
    return g;
}

LabeledGraph make_cycle(const std::vector<Color2>& colors, const std::vector<BaseObject>& edge_labels,
                        const std::map<VertexId, BaseMap>& vertex_labels) {
    int n = static_cast<int>(colors.size());
    if (edge_labels.size() != colors.size() || n < 2) throw ShapeMismatch("cycle shape");
    LabeledGraph g;
    for (int v = 0; v < n; ++v) g.graph.vertices[v] = colors[static_cast<std::size_t>(v)];
    for (int e = 0; e < n; ++e) {
        g.graph.edges[e] = {e, (e + 1) % n};
        g.edge_label[e] = edge_labels[static_cast<std::size_t>(e)];
    }
    for (VertexId v : g.graph.internal_whites()) {
        EdgeId prev = (v + n - 1) % n;
        g.orient[v] = {prev, v};
        auto it = vertex_labels.find(v);
        g.vertex_label.emplace(v, it != vertex_labels.end() ? it->second
                                                            : BaseMap::identity(g.edge_label.at(prev)));
    }
    return g;
}

LabeledGraphMap darkening_map(const LabeledGraph& g, const std::vector<VertexId>& to_black) {
    LabeledGraph target = g;
    for (VertexId v : to_black) {
        if (!g.graph.is_internal_white(v)) throw NotInternalWhite("vertex " + std::to_string(v));
        target.graph.vertices.at(v) = Color2::Black;
        target.orient.erase(v);
        target.vertex_label.erase(v);
    }
    LabeledGraphMap m;
    m.source = g;
    m.target = target;
    m.underlying = GraphMap::identity(g.graph);
    m.underlying.target = target.graph;
    for (const auto& [e, lab] : target.edge_label) m.iota.emplace(e, BaseMap::identity(lab));
    return m;
}

Family reindex_family(const Family& x, const std::map<IndexId, IndexId>& fresh_index) {
    Family out;
    for (const auto& [i, obj] : x.base.factors) out.base.factors[fresh_index.at(i)] = obj;
    if (out.base.factors.size() != x.base.factors.size()) throw ShapeMismatch("reindexing is not injective");
    for (const auto& [k, a] : x.elems) {
        std::map<IndexId, Elem> anchor;
        for (const auto& [i, e] : a) anchor[fresh_index.at(i)] = e;
        out.elems.emplace(k, std::move(anchor));
    }
    return out;
}

MatrixObject reindex_matrix(const MatrixObject& x, const std::map<IndexId, IndexId>& fresh_index) {
    MatrixObject out;
    for (const auto& [i, obj] : x.base.factors) out.base.factors[fresh_index.at(i)] = obj;
    if (out.base.factors.size() != x.base.factors.size()) throw ShapeMismatch("reindexing is not injective");
    for (const auto& t : x.base.tuples()) {
        std::map<IndexId, Elem> anchor;
        for (const auto& [i, e] : t) anchor[fresh_index.at(i)] = e;
        out.rank[tuple_elem(anchor)] = x.rank.at(tuple_elem(t));
    }
    return out;
}

LabeledProduct one_cell_base(const BaseObject& a, const BaseObject& b) {
    LabeledProduct p;
    p.factors[0] = a;
    p.factors[1] = b;
    return p;
}

namespace {

// Normalize an evaluation result on a path or cycle figure to canonical
// one-cell indices {0, 1} (or the empty product for shadows).
Family canonical_one_cell(const AssignmentT<Family>& a, EdgeId left, EdgeId right) {
    if (a.comp.size() != 1) throw ShapeMismatch("expected a single component");
    return reindex_family(a.comp.begin()->second, {{left, 0}, {right, 1}});
}

}  // namespace

Family op_I() {
    // empty graph to a lone black vertex
    LabeledGraph src;  // empty
    LabeledGraph tgt;
    tgt.graph.vertices[0] = Color2::Black;
    // a lone black vertex needs an edge to be a valid graph; use a loop
    tgt.graph.edges[0] = {0, 0};
    tgt.edge_label[0] = star();
    LabeledGraphMap m;
    m.source = src;
    m.target = tgt;
    m.underlying.source = src.graph;
    m.underlying.target = tgt.graph;
    m.iota.emplace(0, BaseMap::identity(star()));
    Assignment empty;
    auto out = evaluate<FamilyBackend>(plan_from(m), empty);
    if (out.comp.size() != 1) throw ShapeMismatch("unit evaluation shape");
    return out.comp.begin()->second;
}

Family op_unit(const BaseObject& b) {
    LabeledGraph g = make_path({Color2::White, Color2::White, Color2::White}, {b, b});
    auto plan = plan_from(darkening_map(g, {1}));
    Assignment a;  // no star components upstream
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 1);
}

Family op_base_change_l(const BaseMap& f) {
    LabeledGraph g = make_path({Color2::White, Color2::White, Color2::White}, {f.dom, f.cod},
                               {{1, f}});
    auto plan = plan_from(darkening_map(g, {1}));
    Assignment a;
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 1);
}

Family op_base_change_r(const BaseMap& f) {
    // [B f A> over B x A: mirror image, the arrow points from right to left
    LabeledGraph g = make_path({Color2::White, Color2::White, Color2::White}, {f.cod, f.dom});
    g.orient[1] = {1, 0};  // source edge on the right
    g.vertex_label.at(1) = f;
    auto plan = plan_from(darkening_map(g, {1}));
    Assignment a;
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 1);
}

Family op_odot(const Family& m, const Family& n) {
    const BaseObject& A = m.base.factors.at(0);
    const BaseObject& B = m.base.factors.at(1);
    const BaseObject& B2 = n.base.factors.at(0);
    const BaseObject& C = n.base.factors.at(1);
    if (!(B == B2)) throw BaseMismatch("odot middle labels disagree");
    LabeledGraph g = make_path({Color2::White, Color2::Black, Color2::White, Color2::Black, Color2::White},
                               {A, B, B, C});
    auto plan = plan_from(darkening_map(g, {2}));
    Assignment a;
    a.comp[0] = reindex_family(m, {{0, 0}, {1, 1}});
    a.comp[1] = reindex_family(n, {{0, 2}, {1, 3}});
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 3);
}

Family op_shadow(const Family& m) {
    const BaseObject& B = m.base.factors.at(0);
    if (!(B == m.base.factors.at(1))) throw BaseMismatch("shadow needs an endo one-cell");
    LabeledGraph g = make_cycle({Color2::Black, Color2::White}, {B, B});
    auto plan = plan_from(darkening_map(g, {1}));
    Assignment a;
    a.comp[0] = reindex_family(m, {{0, 0}, {1, 1}});
    auto out = evaluate<FamilyBackend>(plan, a);
    if (out.comp.size() != 1) throw ShapeMismatch("shadow evaluation shape");
    return out.comp.begin()->second;
}

Family op_pull(const BaseMap& f, const Family& m) {
    const BaseObject& B = m.base.factors.at(0);
    const BaseObject& C = m.base.factors.at(1);
    if (!(B == f.cod)) throw BaseMismatch("pull label mismatch");
    LabeledGraph g = make_path({Color2::White, Color2::White, Color2::Black, Color2::White},
                               {f.dom, f.cod, C});
    g.vertex_label.at(1) = f;
    auto plan = plan_from(darkening_map(g, {1}));
    Assignment a;
    a.comp[0] = reindex_family(m, {{0, 1}, {1, 2}});
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 2);
}

Family op_push(const BaseMap& f, const Family& m) {
    const BaseObject& A = m.base.factors.at(0);
    const BaseObject& B = m.base.factors.at(1);
    if (!(B == f.dom)) throw BaseMismatch("push label mismatch");
    LabeledGraph g = make_path({Color2::White, Color2::Black, Color2::White, Color2::White},
                               {A, f.dom, f.cod});
    g.vertex_label.at(2) = f;
    auto plan = plan_from(darkening_map(g, {2}));
    Assignment a;
    a.comp[0] = reindex_family(m, {{0, 0}, {1, 1}});
    return canonical_one_cell(evaluate<FamilyBackend>(plan, a), 0, 2);
}

namespace {

// The n-sheet trivial cover of the two-edge path. Sheets use vertex ids
// 10+3i.. and edge ids 10+2i..; the target is vertices 0..2, edges 0..1.
LabeledGraphMap cover_map(const std::vector<BaseObject>& lefts, const std::vector<BaseObject>& rights,
                          const BaseMap& left_iota, const BaseMap& right_iota) {
    std::size_t n = lefts.size();
    LabeledGraph src, tgt;
    tgt.graph.vertices = {{0, Color2::White}, {1, Color2::Black}, {2, Color2::White}};
    tgt.graph.edges = {{0, {0, 1}}, {1, {1, 2}}};
    tgt.edge_label[0] = left_iota.dom;
    tgt.edge_label[1] = right_iota.dom;
    LabeledGraphMap m;
    for (std::size_t i = 0; i < n; ++i) {
        VertexId v0 = static_cast<VertexId>(10 + 3 * i);
        EdgeId e0 = static_cast<EdgeId>(10 + 2 * i);
        src.graph.vertices[v0] = Color2::White;
        src.graph.vertices[v0 + 1] = Color2::Black;
        src.graph.vertices[v0 + 2] = Color2::White;
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
    m.iota.emplace(0, left_iota);
    m.iota.emplace(1, right_iota);
    return m;
}

BaseMap product_identity_iota(const std::vector<BaseObject>& factors) {
    BaseObject dom = ordered_product(factors);
    std::map<Elem, Elem> fn;
    for (const Elem& e : dom.elems) fn[e] = e;
    return BaseMap(dom, dom, std::move(fn));
}

}  // namespace

Family op_boxtimes(const std::vector<Family>& ms) {
    if (ms.empty()) throw ShapeMismatch("empty external product");
    std::vector<BaseObject> lefts, rights;
    for (const auto& m : ms) {
        lefts.push_back(m.base.factors.at(0));
        rights.push_back(m.base.factors.at(1));
    }
    LabeledGraphMap cov = cover_map(lefts, rights, product_identity_iota(lefts), product_identity_iota(rights));
    Assignment a;
    for (std::size_t i = 0; i < ms.size(); ++i)
        a.comp[static_cast<int>(i)] =
            reindex_family(ms[i], {{0, static_cast<int>(10 + 2 * i)}, {1, static_cast<int>(11 + 2 * i)}});
    return canonical_one_cell(evaluate<FamilyBackend>(plan_from(cov), a), 0, 1);
}

Family op_twisted_boxtimes(const std::vector<Family>& ms) {
    // P_i over B_{i-1} x B_i; the left identification is the cyclic shift
    if (ms.empty()) throw ShapeMismatch("empty twisted product");
    std::size_t n = ms.size();
    std::vector<BaseObject> lefts, rights;
    for (std::size_t i = 0; i < n; ++i) {
        lefts.push_back(ms[i].base.factors.at(0));  // B_{i-1}
        rights.push_back(ms[i].base.factors.at(1));  // B_i
    }
    BaseObject prod_b = ordered_product(rights);
    // iota_left: prod B_i -> ordered product of B_{i-1}: cyclic shift
    std::map<Elem, Elem> shift;
    for (const Elem& e : prod_b.elems) {
        if (n == 1) {
            shift[e] = e;
            continue;
        }
        std::vector<Elem> parts;
        for (std::size_t i = 0; i < n; ++i) parts.push_back(e.parts()[(i + n - 1) % n]);
        shift[e] = Elem::tuple(std::move(parts));
    }
    BaseMap left_iota(prod_b, ordered_product(lefts), std::move(shift));
    LabeledGraphMap cov = cover_map(lefts, rights, left_iota, product_identity_iota(rights));
    Assignment a;
    for (std::size_t i = 0; i < n; ++i)
        a.comp[static_cast<int>(i)] =
            reindex_family(ms[i], {{0, static_cast<int>(10 + 2 * i)}, {1, static_cast<int>(11 + 2 * i)}});
    return canonical_one_cell(evaluate<FamilyBackend>(plan_from(cov), a), 0, 1);
}

Family op_cover_pullback(const LabeledGraphMap& cover, const Assignment& a) {
    auto out = evaluate<FamilyBackend>(plan_from(cover), a);
    if (out.comp.size() != 1) throw ShapeMismatch("cover evaluation shape");
    return out.comp.begin()->second;
}

CoherenceVerdict check_locality(const LabeledGraphMap& m, const std::vector<VertexId>& source_cut,
                                const std::vector<VertexId>& target_cut, const Assignment& a) {
    GraphDiagram diagram;
    diagram.objects = {{0, m.source}, {1, m.target}};
    diagram.arrows = {{0, {0, 1, m}}};
    auto valid = validate_cut_set(diagram, {{0, source_cut}, {1, target_cut}});
    if (!valid.valid()) throw InvalidMorphism("check_locality: " + valid.issues.front().code);

    // the induced map of cut graphs
    LabeledGraph cs = cut_along(m.source, source_cut);
    LabeledGraph ct = cut_along(m.target, target_cut);
    LabeledGraphMap cm;
    cm.source = cs;
    cm.target = ct;
    cm.underlying.source = cs.graph;
    cm.underlying.target = ct.graph;
    // caps were allocated per (edge, end) in ascending edge order on both
    // sides; recover the correspondence from the incidence structure
    std::set<VertexId> scut(source_cut.begin(), source_cut.end());
    std::set<VertexId> tcut(target_cut.begin(), target_cut.end());
    for (const auto& [e, ends] : cs.graph.edges) {
        auto img = m.underlying.emap.at(e);
        if (img.collapsed) throw ShapeMismatch("cut edge collapses");
        cm.underlying.emap[e] = img;
        auto orig_ends = m.source.graph.edges.at(e);
        auto timg_ends = m.target.graph.edges.at(img.id);
        auto ct_ends = ct.graph.edges.at(img.id);
        auto map_end = [&](VertexId cut_v, VertexId orig_v) {
            VertexId w = m.underlying.vmap.at(orig_v);
            if (!scut.count(orig_v)) {
                cm.underlying.vmap[cut_v] = w;  // survivors map to survivors
            } else {
                // cap maps to the cap at the matching end of the image edge
                cm.underlying.vmap[cut_v] = timg_ends.first == w ? ct_ends.first : ct_ends.second;
            }
        };
        map_end(ends.first, orig_ends.first);
        map_end(ends.second, orig_ends.second);
    }
    for (const auto& [e, lab] : ct.edge_label) cm.iota.emplace(e, m.iota.at(e));

    auto r1 = evaluate<FamilyBackend>(plan_from(m), a);
    auto r2 = evaluate<FamilyBackend>(plan_from(cm), a);
    CoherenceVerdict v;
    if (!(r1 == r2)) {
        v.equal = false;
        v.witness = "cut evaluation differs";
    }
    return v;
}

}  // namespace shadowcalc
