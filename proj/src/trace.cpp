#include "shadowcalc/trace.hpp"

#include <algorithm>

namespace shadowcalc {

namespace {

// the full-graph stage maps used on the small side of a cover square
LabeledProductMap small_pull(const LabeledGraph& g, const Coloring& c, VertexId v) {
    return d_arrow(g, c.with(v, Color3::Gray), c);
}
LabeledProductMap small_push(const LabeledGraph& g, const Coloring& c, VertexId v) {
    return d_arrow(g, c, c.with(v, Color3::Black));
}

// whisker a bijection through small-side flip stages starting at coloring c
Bijection whisker_small(const LabeledGraph& g, Coloring c, const RouteWord& suffix, Bijection iso) {
    for (const auto& sym : suffix) {
        if (!sym.push) {
            Coloring c2 = c.with(sym.vertex, Color3::Gray);
            iso = pullback_map(d_arrow(g, c2, c), iso);
            c = c2;
        } else {
            Coloring c2 = c.with(sym.vertex, Color3::Black);
            iso = pushforward_map(d_arrow(g, c, c2), iso);
            c = c2;
        }
    }
    return iso;
}

std::vector<VertexId> preimage_vertices(const LabeledGraphMap& cover, VertexId w) {
    std::vector<VertexId> out;
    for (const auto& [v, img] : cover.underlying.vmap)
        if (img == w && cover.source.graph.is_internal_white(v)) out.push_back(v);
    return out;
}

Coloring multi_with(const Coloring& c, const std::vector<VertexId>& vs, Color3 shade) {
    Coloring out = c;
    for (VertexId v : vs) out.shades.at(v) = shade;
    return out;
}

}  // namespace

Bijection cover_square_iso(const LabeledGraphMap& cover, const std::vector<VertexId>& small_order,
                           const Assignment& a) {
    const LabeledGraph& big = cover.source;
    const LabeledGraph& small = cover.target;
    std::vector<VertexId> big_whites = big.graph.internal_whites();
    DarkContext big_ctx = darkening_context(big, big_whites);
    if (big_ctx.universe.size() != 1) throw ShapeMismatch("cover square needs a connected target");
    int comp = big_ctx.universe.front();

    VerticalState big_start = start_state(big_ctx, a);
    Family w0 = big_start.value.at(comp);

    // route A: descend along the cover, then flip the target in small_order
    RouteWord small_word = blocks_for(small_order);

    // the full route A value seeds the running isomorphism
    Family route_a;
    {
        Coloring c = Coloring::all_white(small);
        route_a = pullback(d_along_graphmap(cover, c), w0);
        for (const auto& sym : small_word) {
            if (!sym.push) {
                Coloring c2 = c.with(sym.vertex, Color3::Gray);
                route_a = pullback(d_arrow(small, c2, c), route_a);
                c = c2;
            } else {
                Coloring c2 = c.with(sym.vertex, Color3::Black);
                route_a = pushforward(d_arrow(small, c, c2), route_a);
                c = c2;
            }
        }
    }

    // transform: move the cover stage past one small flip at a time
    Family w = w0;             // value upstairs after the grouped multi flips
    Coloring c = Coloring::all_white(small);
    Bijection total = FamilyMap::identity(route_a);
    std::vector<RouteWord> flat_groups;  // upstairs single-vertex words per small flip
    for (std::size_t i = 0; i < small_word.size(); ++i) {
        const RouteSymbol& sym = small_word[i];
        RouteWord suffix(small_word.begin() + static_cast<std::ptrdiff_t>(i) + 1, small_word.end());
        std::vector<VertexId> pre = preimage_vertices(cover, sym.vertex);
        Bijection core = FamilyMap::identity(w);
        Coloring c2 = c;
        if (!sym.push) {
            c2 = c.with(sym.vertex, Color3::Gray);
            LabeledProductMap b = small_pull(small, c, sym.vertex);
            LabeledProductMap psi_c = d_along_graphmap(cover, c);
            LabeledProductMap psi_g = d_along_graphmap(cover, c2);
            Coloring up = pullback_coloring(cover, c);
            Coloring up2 = pullback_coloring(cover, c2);
            LabeledProductMap m = d_arrow_multi(big, up2, up);
            if (!(compose(b, psi_c) == compose(psi_g, m)))
                throw ShapeMismatch("cover square does not commute at a pull flip");
            core = compose(iso_comp_pull(b, psi_c, w).inverse(), iso_comp_pull(psi_g, m, w));
            RouteWord grp;
            for (VertexId v : pre) grp.push_back({v, false});
            flat_groups.push_back(grp);
            w = pullback(m, w);
        } else {
            c2 = c.with(sym.vertex, Color3::Black);
            LabeledProductMap f = small_push(small, c, sym.vertex);
            LabeledProductMap h = d_along_graphmap(cover, c);
            LabeledProductMap g = d_along_graphmap(cover, c2);
            Coloring up = pullback_coloring(cover, c);
            Coloring up2 = pullback_coloring(cover, c2);
            LabeledProductMap k = d_arrow_multi(big, up, up2);
            if (!(compose(f, g) == compose(h, k)))
                throw ShapeMismatch("cover square does not commute at a push flip");
            core = beck_chevalley_iso(f, h, g, k, w);
            RouteWord grp;
            for (VertexId v : pre) grp.push_back({v, true});
            flat_groups.push_back(grp);
            w = pushforward(k, w);
        }
        Bijection step = whisker_small(small, c2, suffix, core);
        total = compose(total, step);
        c = c2;
    }

    // the trailing cover stage at the full coloring is a map of empty
    // products, hence a strict identity; drop it and decompose the grouped
    // multi flips into single flips, last group first
    Family w_run = w0;
    std::vector<std::pair<LabeledProductMap, bool>> flat_stages;  // (map, is_push) per single flip
    {
        Coloring upc = Coloring::all_white(big);
        for (const auto& grp : flat_groups) {
            for (const auto& sym : grp) {
                if (!sym.push) {
                    Coloring up2 = upc.with(sym.vertex, Color3::Gray);
                    flat_stages.push_back({d_arrow(big, up2, upc), false});
                    upc = up2;
                } else {
                    Coloring up2 = upc.with(sym.vertex, Color3::Black);
                    flat_stages.push_back({d_arrow(big, upc, up2), true});
                    upc = up2;
                }
            }
        }
    }
    // iso between each multi stage and its single-flip decomposition,
    // whiskered through the later stages
    {
        Coloring upc = Coloring::all_white(big);
        Family wcur = w0;
        std::size_t flat_pos = 0;
        for (std::size_t gi = 0; gi < flat_groups.size(); ++gi) {
            const RouteWord& grp = flat_groups[gi];
            bool is_push = !grp.empty() && grp.front().push;
            Coloring up2 = multi_with(upc, [&] {
                std::vector<VertexId> vs;
                for (const auto& sym : grp) vs.push_back(sym.vertex);
                return vs;
            }(), is_push ? Color3::Black : Color3::Gray);
            // chain the singles and compare with the multi
            Bijection dec = FamilyMap::identity(is_push ? pushforward(d_arrow_multi(big, upc, up2), wcur)
                                                        : pullback(d_arrow_multi(big, up2, upc), wcur));
            if (grp.size() > 1) {
                if (!is_push) {
                    // multi pull equals the ascending chain of single pulls
                    LabeledProductMap multi = d_arrow_multi(big, up2, upc);
                    std::vector<LabeledProductMap> singles;
                    Coloring cc = upc;
                    for (const auto& sym : grp) {
                        Coloring nn = cc.with(sym.vertex, Color3::Gray);
                        singles.push_back(d_arrow(big, nn, cc));
                        cc = nn;
                    }
                    // fold from the outside: multi == s_last ; ... ; s_first
                    LabeledProductMap acc = singles.back();
                    for (std::size_t j = singles.size() - 1; j-- > 0;) acc = compose(acc, singles[j]);
                    if (!(acc == multi)) throw ShapeMismatch("multi pull does not decompose");
                    Bijection cur = FamilyMap::identity(pullback(multi, wcur));
                    Family base = wcur;
                    LabeledProductMap rest = multi;
                    for (std::size_t j = 0; j + 1 < singles.size(); ++j) {
                        // rest == tail ; singles[j]
                        LabeledProductMap tail = singles.back();
                        for (std::size_t t = singles.size() - 1; t-- > j + 1;) tail = compose(tail, singles[t]);
                        Bijection split = iso_comp_pull(tail, singles[j], base);
                        // whisker nothing: acting at the inner position
                        cur = compose(cur, split);
                        base = pullback(singles[j], base);
                        rest = tail;
                    }
                    dec = cur;
                } else {
                    LabeledProductMap multi = d_arrow_multi(big, upc, up2);
                    std::vector<LabeledProductMap> singles;
                    Coloring cc = upc;
                    for (const auto& sym : grp) {
                        Coloring nn = cc.with(sym.vertex, Color3::Black);
                        singles.push_back(d_arrow(big, cc, nn));
                        cc = nn;
                    }
                    LabeledProductMap acc = singles.front();
                    for (std::size_t j = 1; j < singles.size(); ++j) acc = compose(acc, singles[j]);
                    if (!(acc == multi)) throw ShapeMismatch("multi push does not decompose");
                    // pushforwards keep element keys, so the decomposition
                    // isomorphism is the identity on elements
                    Family staged = wcur;
                    for (const auto& s : singles) staged = pushforward(s, staged);
                    std::map<Elem, Elem> e;
                    for (const auto& [k2, a2] : pushforward(multi, wcur).elems) e[k2] = k2;
                    dec = FamilyMap(pushforward(multi, wcur), staged,
                                    LabeledProductMap::identity(staged.base), e);
                }
            }
            // whisker the decomposition through the remaining groups
            Coloring after = up2;
            Bijection step = dec;
            for (std::size_t gj = gi + 1; gj < flat_groups.size(); ++gj) {
                const RouteWord& later = flat_groups[gj];
                bool later_push = !later.empty() && later.front().push;
                Coloring nn = multi_with(after, [&] {
                    std::vector<VertexId> vs;
                    for (const auto& sym : later) vs.push_back(sym.vertex);
                    return vs;
                }(), later_push ? Color3::Black : Color3::Gray);
                if (later_push)
                    step = pushforward_map(d_arrow_multi(big, after, nn), step);
                else
                    step = pullback_map(d_arrow_multi(big, nn, after), step);
                after = nn;
            }
            total = compose(total, step);
            // advance wcur through the singles of this group
            for (const auto& sym : grp) {
                if (!sym.push) {
                    Coloring nn = upc.with(sym.vertex, Color3::Gray);
                    wcur = pullback(d_arrow(big, nn, upc), wcur);
                    upc = nn;
                } else {
                    Coloring nn = upc.with(sym.vertex, Color3::Black);
                    wcur = pushforward(d_arrow(big, upc, nn), wcur);
                    upc = nn;
                }
            }
            flat_pos += grp.size();
        }
        (void)flat_pos;
    }

    // reorder the flat grouped word into the canonical ascending word
    RouteWord grouped;
    for (const auto& grp : flat_groups) grouped.insert(grouped.end(), grp.begin(), grp.end());
    RouteWord canonical = blocks_for(big_whites);
    RouteWord cursor = grouped;
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < canonical.size(); ++i) {
        std::size_t j = i;
        while (!(cursor[j] == canonical[i])) ++j;
        while (j > i) {
            path.push_back(j - 1);
            std::swap(cursor[j - 1], cursor[j]);
            --j;
        }
    }
    RouteWord word_for_path = grouped;
    auto reorder = swap_path_iso(big_ctx, big_start, word_for_path, path);
    total = compose(total, reorder.at(comp));
    return total;
}

LabeledGraphMap cyclic_cover(const std::vector<BaseObject>& bs) {
    std::size_t n = bs.size();
    LabeledGraph big, small;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        big.graph.vertices[static_cast<VertexId>(i)] = i % 2 == 0 ? Color2::Black : Color2::White;
        big.graph.edges[static_cast<EdgeId>(i)] = {static_cast<VertexId>(i),
                                                   static_cast<VertexId>((i + 1) % (2 * n))};
        // arc between slot i/2 and the next slot carries B_{i/2}
        big.edge_label[static_cast<EdgeId>(i)] = bs[i / 2];
    }
    for (VertexId v : big.graph.internal_whites()) {
        EdgeId prev = static_cast<EdgeId>((v + 2 * static_cast<int>(n) - 1) % (2 * static_cast<int>(n)));
        big.orient[v] = {prev, v};
        big.vertex_label.emplace(v, BaseMap::identity(big.edge_label.at(prev)));
    }
    std::vector<BaseObject> sheet0, sheet1;
    for (std::size_t i = 0; i < n; ++i) {
        sheet0.push_back(bs[i]);  // preimages of the small edge 0 are even edges
        sheet1.push_back(bs[i]);
    }
    BaseObject prod = ordered_product(sheet0);
    small.graph.vertices = {{0, Color2::Black}, {1, Color2::White}};
    small.graph.edges = {{0, {0, 1}}, {1, {1, 0}}};
    small.edge_label = {{0, prod}, {1, prod}};
    small.orient[1] = {0, 1};
    small.vertex_label.emplace(1, BaseMap::identity(prod));

    LabeledGraphMap cov;
    cov.source = big;
    cov.target = small;
    cov.underlying.source = big.graph;
    cov.underlying.target = small.graph;
    for (std::size_t i = 0; i < 2 * n; ++i) {
        cov.underlying.vmap[static_cast<VertexId>(i)] = i % 2 == 0 ? 0 : 1;
        cov.underlying.emap[static_cast<EdgeId>(i)] = EdgeImage::edge(i % 2 == 0 ? 0 : 1);
    }
    std::map<Elem, Elem> idmap;
    for (const Elem& e : prod.elems) idmap[e] = e;
    cov.iota.emplace(0, BaseMap(prod, prod, idmap));
    cov.iota.emplace(1, BaseMap(prod, prod, idmap));
    return cov;
}

LabeledGraphMap slot_cover(const std::vector<BaseObject>& arc_labels, int k_small, int whites_per_arc) {
    int n = (int)arc_labels.size();
    int stride = 1 + whites_per_arc;
    int big_n = n * stride;
    LabeledGraph big, small;
    for (int i = 0; i < big_n; ++i) {
        big.graph.vertices[i] = (i % stride == 0) ? Color2::Black : Color2::White;
        big.graph.edges[i] = {i, (i + 1) % big_n};
        big.edge_label[i] = arc_labels[(size_t)(i / stride)];
    }
    for (VertexId v : big.graph.internal_whites()) {
        EdgeId prev = (v + big_n - 1) % big_n;
        big.orient[v] = {prev, v};
        big.vertex_label.emplace(v, BaseMap::identity(big.edge_label.at(prev)));
    }
    int small_n = k_small * stride;
    for (int i = 0; i < small_n; ++i) {
        small.graph.vertices[i] = (i % stride == 0) ? Color2::Black : Color2::White;
        small.graph.edges[i] = {i, (i + 1) % small_n};
    }
    // small edge labels: product over preimage arcs
    for (int i = 0; i < small_n; ++i) {
        std::vector<BaseObject> facs;
        for (int j = i; j < big_n; j += small_n) facs.push_back(big.edge_label.at(j));
        small.edge_label[i] = ordered_product(facs);
    }
    for (VertexId v : small.graph.internal_whites()) {
        EdgeId prev = (v + small_n - 1) % small_n;
        small.orient[v] = {prev, v};
        small.vertex_label.emplace(v, BaseMap::identity(small.edge_label.at(prev)));
    }
    LabeledGraphMap cov;
    cov.source = big;
    cov.target = small;
    cov.underlying.source = big.graph;
    cov.underlying.target = small.graph;
    for (int i = 0; i < big_n; ++i) {
        cov.underlying.vmap[i] = i % small_n;
        cov.underlying.emap[i] = EdgeImage::edge(i % small_n);
    }
    for (auto& [e, lab] : small.edge_label) {
        std::map<Elem, Elem> id;
        for (const Elem& x : lab.elems) id[x] = x;
        cov.iota.emplace(e, BaseMap(lab, lab, id));
    }
    return cov;
}

Bijection untwisting_iso(const std::vector<Family>& ps) {
    std::vector<BaseObject> bs;
    for (const auto& p : ps) bs.push_back(p.base.factors.at(1));
    LabeledGraphMap cov = cyclic_cover(bs);
    Assignment a;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        // slot star i sits at black vertex 2i with edges 2i-1 and 2i
        int left = static_cast<int>((2 * i + 2 * ps.size() - 1) % (2 * ps.size()));
        int right = static_cast<int>(2 * i);
        a.comp[static_cast<int>(i)] = reindex_family(ps[i], {{0, left}, {1, right}});
    }
    // component ids follow star ordinals; reindex into star order
    Constellation cut = maximal_cut(cov.source);
    Assignment b;
    for (auto& [i, fam] : a.comp) {
        int star = cut.star_of_edge.at(2 * i);
        b.comp[star] = fam;
    }
    return cover_square_iso(cov, cov.target.graph.internal_whites(), b);
}

bool cover_square_coherent(const LabeledGraphMap& cover, const std::vector<VertexId>& order1,
                           const std::vector<VertexId>& order2, const Assignment& a) {
    Bijection t1 = cover_square_iso(cover, order1, a);
    Bijection t2 = cover_square_iso(cover, order2, a);
    // small-side reorder between the two route-A values
    const LabeledGraph& small = cover.target;
    DarkContext small_ctx = darkening_context(small, small.graph.internal_whites());
    if (small_ctx.universe.size() != 1) throw ShapeMismatch("cover square needs a connected target");
    int comp = small_ctx.universe.front();
    DarkContext big_ctx = darkening_context(cover.source, cover.source.graph.internal_whites());
    VerticalState big_start = start_state(big_ctx, a);
    Family w0 = big_start.value.at(big_ctx.universe.front());
    Coloring c0 = Coloring::all_white(small);
    Family pulled = pullback(d_along_graphmap(cover, c0), w0);
    VerticalState small_start;
    small_start.coloring = c0;
    small_start.value[comp] = pulled;

    RouteWord w1 = blocks_for(order1), w2 = blocks_for(order2);
    RouteWord cursor = w1;
    std::vector<std::size_t> path;
    for (std::size_t i = 0; i < w2.size(); ++i) {
        std::size_t j = i;
        while (!(cursor[j] == w2[i])) ++j;
        while (j > i) {
            path.push_back(j - 1);
            std::swap(cursor[j - 1], cursor[j]);
            --j;
        }
    }
    RouteWord word_for_path = w1;
    auto reorder = swap_path_iso(small_ctx, small_start, word_for_path, path);
    Bijection rhs = compose(reorder.at(comp), t2);
    return t1 == rhs;
}

}  // namespace shadowcalc

namespace shadowcalc {

SuiteResult untwisting_suite(int max_n, std::uint64_t seed, int instances) {
    SuiteResult r;
    r.name = "untwisting";
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        try {
            int which = i % 3;
            if (which == 0) {
                // twist compatibility: the alternating two-slot cover
                int n = 2 * rng.pick(1, std::max(1, max_n / 2 + 1));
                std::vector<BaseObject> arcs;
                for (int j = 0; j < n; ++j) arcs.push_back(random_base(rng, 3));
                auto cov = slot_cover(arcs, 2, 1);
                Assignment a = random_assignment(cov.source, rng, 1);
                auto w = cov.target.graph.internal_whites();
                ++r.instances;
                if (!cover_square_coherent(cov, {w[0], w[1]}, {w[1], w[0]}, a)) ++r.failures;
            } else {
                // unit compatibilities: one slot downstairs, three whites
                int n = rng.pick(1, std::max(1, max_n));
                std::vector<BaseObject> arcs;
                for (int j = 0; j < n; ++j) arcs.push_back(random_base(rng, 3));
                auto cov = slot_cover(arcs, 1, 3);
                Assignment a = random_assignment(cov.source, rng, 1);
                auto w = cov.target.graph.internal_whites();
                ++r.instances;
                bool ok = which == 1 ? cover_square_coherent(cov, {w[0], w[1], w[2]}, {w[2], w[1], w[0]}, a)
                                     : cover_square_coherent(cov, {w[1], w[0], w[2]}, {w[0], w[2], w[1]}, a);
                if (!ok) ++r.failures;
            }
        } catch (const Error& e) {
            ++r.instances;
            ++r.failures;
            if (r.witnesses.size() < 3) r.witnesses.push_back(e.what());
        }
    }
    return r;
}

Int matrix_trace(const Mat& phi) { return phi.trace(); }


namespace {

// apply a list of blocks, one per digit position, to a mixed-radix vector
std::vector<Int> apply_blocks(const std::vector<Mat>& blocks, const std::vector<Int>& v) {
    std::vector<std::size_t> in_dims, out_dims;
    for (const auto& b : blocks) {
        in_dims.push_back(b.cols);
        out_dims.push_back(b.rows);
    }
    std::size_t in_total = 1, out_total = 1;
    for (std::size_t d : in_dims) in_total *= d;
    for (std::size_t d : out_dims) out_total *= d;
    if (v.size() != in_total) throw ShapeMismatch("vector length mismatch");
    std::vector<Int> out(out_total, 0);
    std::vector<std::size_t> digit(blocks.size(), 0);
    for (std::size_t idx = 0; idx < in_total; ++idx) {
        if (v[idx] != 0) {
            // distribute this entry across all output digit choices
            std::vector<std::size_t> od(blocks.size(), 0);
            for (;;) {
                Int coeff = v[idx];
                for (std::size_t t = 0; t < blocks.size() && coeff != 0; ++t)
                    coeff *= blocks[t].at(od[t], digit[t]);
                if (coeff != 0) {
                    std::size_t oidx = 0;
                    for (std::size_t t = 0; t < blocks.size(); ++t) oidx = oidx * out_dims[t] + od[t];
                    out[oidx] += coeff;
                }
                std::size_t p = blocks.size();
                while (p > 0 && ++od[p - 1] == out_dims[p - 1]) od[--p] = 0;
                if (p == 0) break;
            }
        }
        std::size_t p = blocks.size();
        while (p > 0 && ++digit[p - 1] == in_dims[p - 1]) digit[--p] = 0;
        if (p == 0) break;
    }
    return out;
}

std::vector<Int> rotate_digits_left(const std::vector<std::size_t>& dims, const std::vector<Int>& v) {
    std::size_t total = 1;
    for (std::size_t d : dims) total *= d;
    std::vector<Int> out(total, 0);
    std::size_t mlen = dims.size();
    std::vector<std::size_t> digit(mlen, 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t oidx = 0;
        for (std::size_t p = 0; p < mlen; ++p) oidx = oidx * dims[(p + 1) % mlen] + digit[(p + 1) % mlen];
        out[oidx] = v[idx];
        std::size_t p = mlen;
        while (p > 0 && ++digit[p - 1] == dims[p - 1]) digit[--p] = 0;
        if (p == 0) break;
    }
    return out;
}

Mat coevaluation(std::size_t k) {
    Mat m(k * k, 1);
    for (std::size_t j = 0; j < k; ++j) m.at(j * k + j, 0) = 1;
    return m;
}

Mat evaluation(std::size_t k) {
    Mat m(1, k * k);
    for (std::size_t j = 0; j < k; ++j) m.at(0, j * k + j) = 1;
    return m;
}

}  // namespace

Int multitrace_engine(const FullerInstance& inst) {
    std::size_t n = inst.factors.size();
    std::vector<std::size_t> ks;
    for (const auto& f : inst.factors) {
        if (f.rows != f.cols) throw ShapeMismatch("multitrace factors must be square");
        if (f.rows == 0) throw NotDualizable("zero-rank factor");
        ks.push_back(f.rows);
        if (f.rows != inst.factors.front().rows) throw ShapeMismatch("cyclic factors must share a rank");
    }
    // slots (Q_i, M_i, Mbar_i) per term, starting from units everywhere
    std::vector<Int> v{1};
    {
        std::vector<Mat> etas;
        for (std::size_t i = 0; i < n; ++i) {
            etas.push_back(Mat::eye(1));
            etas.push_back(coevaluation(ks[i]));  // spans (M_i, Mbar_i)
        }
        // input digit layout: one trivial digit per term triple
        std::vector<Int> seed{1};
        v = apply_blocks(etas, seed);
    }
    {
        std::vector<Mat> phis;
        for (std::size_t i = 0; i < n; ++i) {
            phis.push_back(inst.factors[i]);  // (Q_i, M_i) -> (M_{i-1}, P_i)
            phis.push_back(Mat::eye(ks[i]));  // Mbar_i untouched
        }
        v = apply_blocks(phis, v);
    }
    {
        // slot dims after the insertions: (k_{i-1} and k_i per term, units
        // dropped); rotate the slot sequence left by one occupied slot
        std::vector<std::size_t> dims;
        for (std::size_t i = 0; i < n; ++i) {
            dims.push_back(ks[(i + n - 1) % n]);
            dims.push_back(ks[i]);
        }
        v = rotate_digits_left(dims, v);
    }
    {
        std::vector<Mat> epss;
        for (std::size_t i = 0; i < n; ++i) epss.push_back(evaluation(ks[i]));  // (Mbar_i, M_i)
        v = apply_blocks(epss, v);
    }
    if (v.size() != 1) throw ShapeMismatch("multitrace did not contract to a scalar");
    return v[0];
}

Int fuller_engine(const FullerInstance& inst) {
    std::size_t n = inst.factors.size();
    std::size_t m = 1;
    std::vector<std::size_t> dims;
    for (const auto& f : inst.factors) {
        if (f.rows != f.cols || f.rows == 0) throw NotDualizable("Fuller factors must be square and nonzero");
        m *= f.rows;
        dims.push_back(f.rows);
    }
    // trace of the twisted-product comparison map through the standard
    // duality: eta, the comparison (factorwise maps then the cyclic
    // regrouping), the rotation, and epsilon
    std::vector<Int> v(m * m, 0);
    for (std::size_t j = 0; j < m; ++j) v[j * m + j] = 1;  // eta of the box product
    {
        // the comparison map acts on the first big digit: factorwise F_i
        // then the cyclic shift of the pairing
        std::vector<Int> out(m * m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            // column j of the factorwise product, digitwise
            std::vector<std::size_t> jd(n);
            std::size_t rem = j;
            for (std::size_t p = n; p-- > 0;) {
                jd[p] = rem % dims[p];
                rem /= dims[p];
            }
            std::vector<std::size_t> id(n, 0);
            for (;;) {
                Int coeff = 1;
                for (std::size_t t = 0; t < n && coeff != 0; ++t) coeff *= inst.factors[t].at(id[t], jd[t]);
                if (coeff != 0) {
                    // regroup with the cyclic shift: out digit p takes id[p+1]
                    std::size_t oi = 0;
                    for (std::size_t p = 0; p < n; ++p) oi = oi * dims[(p + 1) % n] + id[(p + 1) % n];
                    out[oi * m + j] += coeff;
                }
                std::size_t p = n;
                while (p > 0 && ++id[p - 1] == dims[p - 1]) id[--p] = 0;
                if (p == 0) break;
            }
        }
        v = std::move(out);
    }
    v = rotate_digits_left({m, m}, v);
    Int total = 0;
    for (std::size_t j = 0; j < m; ++j) total += v[j * m + j];  // epsilon
    return total;
}

Int fuller_oracle_sum(const FullerInstance& inst) {
    std::size_t n = inst.factors.size();
    std::vector<std::size_t> ks;
    for (const auto& f : inst.factors) ks.push_back(f.rows);
    // sum over index tuples of the product of F_t[x_{t-1}, x_t]
    std::vector<std::size_t> x(n, 0);
    Int sum = 0;
    for (;;) {
        Int term = 1;
        for (std::size_t t = 0; t < n; ++t) term *= inst.factors[t].at(x[(t + n - 1) % n], x[t]);
        sum += term;
        std::size_t p = 0;
        while (p < n && ++x[p] == ks[p]) x[p++] = 0;
        if (p == n) break;
    }
    return sum;
}

Int product_trace_oracle(const FullerInstance& inst) {
    Mat acc = inst.factors.front();
    for (std::size_t i = 1; i < inst.factors.size(); ++i) acc = acc * inst.factors[i];
    return acc.trace();
}

SuiteResult fuller_suite(int max_n, int max_k, std::uint64_t seed, int instances) {
    SuiteResult r;
    r.name = "fuller";
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        int n = rng.pick(1, max_n);
        int k = rng.pick(1, max_k);
        FullerInstance inst;
        for (int j = 0; j < n; ++j) {
            Mat f(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
            for (auto& v : f.a) v = rng.pick(-3, 3);
            inst.factors.push_back(std::move(f));
        }
        Int a = multitrace_engine(inst);
        Int b = fuller_engine(inst);
        Int c = fuller_oracle_sum(inst);
        Int d = product_trace_oracle(inst);
        ++r.instances;
        if (!(a == b && b == c && c == d)) {
            ++r.failures;
            if (r.witnesses.size() < 3)
                r.witnesses.push_back("instance " + std::to_string(i) + ": multitrace=" + a.str() +
                                      " fuller=" + b.str() + " oracle=" + c.str() + " trace=" + d.str());
        }
    }
    return r;
}

}  // namespace shadowcalc
