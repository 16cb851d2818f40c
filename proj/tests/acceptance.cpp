// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.
#include <chrono>
#include <cstdio>
#include <iostream>

#include "helpers.hpp"
#include "shadowcalc/json_io.hpp"
#include "shadowcalc/trace.hpp"

using namespace shadowcalc;
using namespace shadowcalc::testing;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, double seconds, const std::string& detail = "") {
    std::printf("%-4s %-58s %7.2fs%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds,
                detail.empty() ? "" : "  ", detail.c_str());
    if (!ok) ++failures;
}

template <class F>
void criterion(const std::string& name, double budget_s, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = e.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_s) {
        ok = false;
        detail += " (over the " + std::to_string(static_cast<int>(budget_s)) + "s budget)";
    }
    report(name, ok, dt, detail);
}

// ---- criterion 1 ----
bool atomic_all(std::string& detail) {
    for (bool matrix : {false, true})
        for (const auto& kind : atomic_kinds()) {
            SuiteResult r = atomic_suite(kind, 20260809, 200, matrix);
            if (!r.ok()) {
                detail = kind + (matrix ? " (matrix)" : " (family)") + ": " +
                         std::to_string(r.failures) + " failures";
                return false;
            }
        }
    detail = "bijections and permutation matrices";
    return true;
}

// ---- criterion 2 ----
bool pushout_exhaustive(std::string& detail) {
    BaseObject b = BaseObject::range(2);
    long squares = 0;
    auto run_graph = [&](const LabeledGraph& g) {
        auto ivs = g.graph.internal_whites();
        std::vector<Coloring> all{Coloring::all_white(g)};
        for (VertexId v : ivs) {
            std::vector<Coloring> next;
            for (const auto& c : all)
                for (Color3 s : {Color3::White, Color3::Gray, Color3::Black})
                    next.push_back(c.with(v, s));
            all = std::move(next);
        }
        for (const auto& c : all)
            for (VertexId vw : ivs) {
                if (c.at(vw) != Color3::White) continue;
                for (VertexId vb : ivs) {
                    if (vb == vw || c.at(vb) != Color3::Black) continue;
                    ++squares;
                    if (!check_pushout(g, c, vw, vb)) return false;
                }
            }
        return true;
    };
    // all paths with up to five internal whites and black or external ends
    for (int k = 2; k <= 5; ++k)
        for (int ends = 0; ends < 4; ++ends) {
            std::vector<Color2> colors;
            colors.push_back(ends & 1 ? B : W);
            for (int i = 0; i < k; ++i) colors.push_back(W);
            colors.push_back(ends & 2 ? B : W);
            auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b));
            if (!validate_labeled(g).valid()) continue;
            if (!run_graph(g)) {
                detail = "path failure";
                return false;
            }
        }
    // all cycles with up to eight vertices and at most five whites
    for (int n = 2; n <= 8; ++n)
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<Color2> colors;
            int whites = 0;
            for (int i = 0; i < n; ++i) {
                bool white = mask & (1 << i);
                whites += white;
                colors.push_back(white ? W : B);
            }
            if (whites < 2 || whites > 5) continue;
            auto g = make_cycle(colors, std::vector<BaseObject>(static_cast<std::size_t>(n), b));
            if (!run_graph(g)) {
                detail = "cycle failure";
                return false;
            }
        }
    detail = std::to_string(squares) + " flip squares, all pushouts";
    return true;
}

// ---- criterion 3 ----
bool gigantic_laws(std::string& detail) {
    BaseObject b = BaseObject::range(2);
    Rng rng(31337);
    int triples = 0;
    while (triples < 500) {
        int k = rng.pick(1, 6);
        std::vector<Color2> colors{B};
        for (int i = 0; i < k; ++i) colors.push_back(W);
        colors.push_back(B);
        std::map<VertexId, BaseMap> vlabels;
        auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b));
        auto dark = [&](const LabeledGraph& h, Rng& r2) {
            std::vector<VertexId> picks;
            for (VertexId v : h.graph.internal_whites())
                if (r2.pick(0, 1)) picks.push_back(v);
            return darkening_map(h, picks);
        };
        auto m1 = dark(g, rng);
        auto m2 = dark(m1.target, rng);
        auto m3 = dark(m2.target, rng);
        GiganticMorphism e1 = embed(m1), e2 = embed(m2), e3 = embed(m3);
        if (!(compose_gigantic(gigantic_identity(e1.dom), e1) == e1)) return false;
        if (!(compose_gigantic(e1, gigantic_identity(e1.cod)) == e1)) return false;
        if (!(compose_gigantic(compose_gigantic(e1, e2), e3) ==
              compose_gigantic(e1, compose_gigantic(e2, e3))))
            return false;
        if (!(compose_gigantic(e1, e2) == embed(compose_labeled(m1, m2)))) return false;
        if (!(compose_gigantic(e2, e3) == embed(compose_labeled(m2, m3)))) return false;
        ++triples;
    }
    detail = "500 composable triples";
    return true;
}

// ---- criterion 4 ----
std::vector<std::vector<int>> card_grid(const Family& m) {
    const BaseObject& a = m.base.factors.at(0);
    const BaseObject& b = m.base.factors.at(1);
    std::vector<std::vector<int>> out(a.size(), std::vector<int>(b.size(), 0));
    for (const auto& [k, anchor] : m.elems) {
        std::size_t i = 0, j = 0;
        while (!(a.elems[i] == anchor.at(0))) ++i;
        while (!(b.elems[j] == anchor.at(1))) ++j;
        ++out[i][j];
    }
    return out;
}

bool calculus_properties(std::string& detail) {
    BaseObject b2 = BaseObject::range(2);
    Rng rng(777);

    // property 2: one hundred random inert morphisms act as the identity
    for (int iter = 0; iter < 100; ++iter) {
        int k = rng.pick(2, 4);
        std::vector<Color2> colors{W, B};
        for (int i = 0; i < k; ++i) colors.push_back(W);
        colors.push_back(B);
        colors.push_back(W);
        auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b2));
        std::vector<VertexId> candidates;
        for (VertexId v : g.graph.internal_whites()) {
            int blacks = 0;
            for (EdgeId e : g.graph.incident_edges(v)) {
                auto ends = g.graph.edges.at(e);
                VertexId o = ends.first == v ? ends.second : ends.first;
                blacks += g.graph.is_black(o);
            }
            if (blacks == 1) candidates.push_back(v);
        }
        VertexId pick = candidates[static_cast<std::size_t>(rng.pick(0, static_cast<int>(candidates.size()) - 1))];
        LabeledGraphMap m = darkening_map(g, {pick});
        if (rng.pick(0, 1)) {
            // sometimes compose with a collapse of adjacent whites
            std::vector<VertexId> ws = m.target.graph.internal_whites();
            for (std::size_t i = 0; i + 1 < ws.size(); ++i)
                if (ws[i + 1] == ws[i] + 1 && m.target.graph.edges.count(ws[i]) &&
                    m.target.graph.edges.at(ws[i]) == std::pair<VertexId, VertexId>{ws[i], ws[i] + 1}) {
                    m = compose_labeled(m, collapse_adjacent_whites(m.target, ws[i]));
                    break;
                }
        }
        auto bij = inert_constellation_bijection(m);
        if (!bij) {
            detail = "generated morphism not inert";
            return false;
        }
        Assignment a = random_assignment(m.source, rng, 2);
        auto out = evaluate<FamilyBackend>(plan_from(m), a);
        auto stars = pi0_psi(m);
        Constellation sc = maximal_cut(m.source);
        for (const auto& [u, x] : a.comp) {
            const Family& y = out.comp.at(stars.at(u));
            if (x.size() != y.size()) {
                detail = "inert image has different size";
                return false;
            }
            // exact fiberwise counts under the star edge bijection
            for (const auto& t : x.base.tuples()) {
                std::map<IndexId, Elem> t2;
                for (const auto& [e, val] : t) t2[bij->at(e)] = val;
                if (x.fiber(t).size() != y.fiber(t2).size()) {
                    detail = "inert image has different fibers";
                    return false;
                }
            }
        }
    }

    // property 3: locality under cutting on one hundred random pairs
    for (int iter = 0; iter < 100; ++iter) {
        int k = rng.pick(1, 3);
        std::vector<Color2> colors{W, B};
        for (int i = 0; i < k; ++i) {
            colors.push_back(W);
            colors.push_back(B);
        }
        colors.push_back(W);
        auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b2));
        std::vector<VertexId> ivs = g.graph.internal_whites();
        std::vector<VertexId> dark, cut;
        for (VertexId v : ivs) {
            if (rng.pick(0, 1))
                dark.push_back(v);
            else if (rng.pick(0, 1))
                cut.push_back(v);
        }
        auto m = darkening_map(g, dark);
        Assignment a = random_assignment(g, rng, 2);
        if (!check_locality(m, cut, cut, a).equal) {
            detail = "locality violated";
            return false;
        }
    }

    // property 4: the hand-derived operation values
    {
        Family u = op_unit(b2);
        if (card_grid(u) != std::vector<std::vector<int>>{{1, 0}, {0, 1}}) {
            detail = "unit value";
            return false;
        }
        Family m;
        m.base = one_cell_base(b2, b2);
        int next = 0;
        std::vector<std::vector<int>> cards{{2, 1}, {0, 3}};
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (int c = 0; c < cards[i][j]; ++c)
                    m.insert(Elem::atom(next++), {{0, Elem::atom(static_cast<int>(i))},
                                                  {1, Elem::atom(static_cast<int>(j))}});
        if (op_shadow(m).size() != 5) {
            detail = "shadow value";
            return false;
        }
        BaseObject A = BaseObject::range(2), Bb = BaseObject::range(1);
        BaseMap f(A, Bb, {{Elem::atom(0), Elem::atom(0)}, {Elem::atom(1), Elem::atom(0)}});
        if (card_grid(op_base_change_l(f)) != std::vector<std::vector<int>>{{1}, {1}}) {
            detail = "base change value";
            return false;
        }
        // the remaining figure operations evaluate and compose consistently
        Family x = op_odot(u, u);
        if (card_grid(x) != card_grid(u)) {
            detail = "odot unit value";
            return false;
        }
        if (op_boxtimes({u, u}).size() != u.size() * u.size()) {
            detail = "boxtimes cardinality";
            return false;
        }
        if (op_twisted_boxtimes({u, u}).size() != u.size() * u.size()) {
            detail = "twisted boxtimes cardinality";
            return false;
        }
        if (op_I().size() != 1) {
            detail = "unit object value";
            return false;
        }
        BaseMap g0(A, A, {{Elem::atom(0), Elem::atom(1)}, {Elem::atom(1), Elem::atom(0)}});
        Family pulled = op_pull(g0, op_unit(A));
        if (card_grid(pulled) != std::vector<std::vector<int>>{{0, 1}, {1, 0}}) {
            detail = "pull value";
            return false;
        }
        Family pushed = op_push(f, op_unit(A));
        if (card_grid(pushed) != std::vector<std::vector<int>>{{1}, {1}}) {
            detail = "push value";
            return false;
        }
        Family bcr = op_base_change_r(f);
        if (card_grid(bcr) != std::vector<std::vector<int>>{{1, 1}}) {
            detail = "right base change value";
            return false;
        }
        Assignment ca;
        ca.comp[0] = reindex_family(u, {{0, 10}, {1, 11}});
        ca.comp[1] = reindex_family(u, {{0, 12}, {1, 13}});
        auto cov = shadowcalc::testing::trivial_cover({b2, b2}, {b2, b2});
        Family covered = op_cover_pullback(cov, ca);
        if (covered.size() != u.size() * u.size()) {
            detail = "cover pullback cardinality";
            return false;
        }
    }

    // property 5: the four figure isomorphism squares
    SuiteResult r4 = four_isomorphism_suite(20260809, 25);
    if (!r4.ok()) {
        detail = "four isomorphisms: " + std::to_string(r4.failures) + " failures";
        return false;
    }
    return true;
}

// ---- criterion 9 ----
bool rotation_negative_all(std::string& detail) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        RotationVerdict v = negative_test_rotation(seed);
        if (!v.unequal) {
            detail = "expected UNEQUAL at seed " + std::to_string(seed);
            return false;
        }
        if (seed == 0) detail = "witness " + v.witness;
    }
    if (negative_test_rotation(0, true).unequal) {
        detail = "identity control came out unequal";
        return false;
    }
    if (negative_test_rotation(0, false, 1).unequal) {
        detail = "singleton control came out unequal";
        return false;
    }
    return true;
}

// ---- criterion 10 ----
bool d_table_conformance(std::string& detail) {
    // the labeled test string with three internal whites; flipping the middle
    // vertex exercises all nine generator rows
    BaseObject b0 = BaseObject::range(2), b1 = BaseObject::range(3), b2 = BaseObject::range(2),
               b3 = BaseObject::range(3);
    Rng rng(99);
    BaseMap f1 = random_map(rng, b0, b1), f2 = random_map(rng, b1, b2), f3 = random_map(rng, b2, b3);
    auto g = make_path({B, W, W, W, B}, {b0, b1, b2, b3}, {{1, f1}, {2, f2}, {3, f3}});

    auto expect = [&](Color3 l, Color3 r, bool push, const LabeledProductMap& actual) -> bool {
        // build the expected map from the table formulas
        Coloring c = Coloring::all_white(g);
        c.shades[1] = l;
        c.shades[2] = Color3::Gray;
        c.shades[3] = r;
        Coloring c2 = c.with(2, push ? Color3::Black : Color3::White);
        // expected components: per gray edge of c2, project to its
        // containing edge of c and compose the labels along the path
        GrayEdgeSet before = gray_edges(g, c);
        GrayEdgeSet after = gray_edges(g, c2);
        std::map<IndexId, IndexId> idx;
        std::map<IndexId, BaseMap> comps;
        for (const auto& t : after.edges) {
            const GrayEdge* s = before.containing(t.rep);
            if (!s) return false;
            idx[t.rep] = s->rep;
            BaseMap comp = BaseMap::identity(g.edge_label.at(s->rep));
            // walk the composite by hand along consecutive edges
            std::vector<EdgeId> edges = s->edges;
            std::size_t pos = 0;
            while (edges[pos] != s->rep) ++pos;
            while (edges[pos] != t.rep) {
                // vertex between edges[pos] and edges[pos+1] is pos-th white
                VertexId v = static_cast<VertexId>(edges[pos] + 1);
                comp = compose(comp, g.vertex_label.at(v));
                ++pos;
            }
            comps.emplace(t.rep, comp);
        }
        LabeledProductMap expected(d_object(g, c), d_object(g, c2), std::move(idx), std::move(comps));
        return expected == actual;
    };

    for (Color3 l : {Color3::White, Color3::Gray, Color3::Black})
        for (Color3 r : {Color3::White, Color3::Gray, Color3::Black}) {
            Coloring c = Coloring::all_white(g);
            c.shades[1] = l;
            c.shades[2] = Color3::Gray;
            c.shades[3] = r;
            LabeledProductMap up = d_arrow(g, c, c.with(2, Color3::White));
            LabeledProductMap down = d_arrow(g, c, c.with(2, Color3::Black));
            if (!expect(l, r, false, up) || !expect(l, r, true, down)) {
                detail = "row mismatch";
                return false;
            }
        }

    // spot checks of the table entries on the two-edge string
    {
        BaseObject bb = BaseObject::range(2);
        Rng r2(5);
        BaseMap f = random_map(r2, bb, bb);
        auto h = make_path({B, W, B}, {bb, bb}, {{1, f}});
        Coloring gray = Coloring::all_white(h).with(1, Color3::Gray);
        LabeledProductMap upm = d_arrow(h, gray, gray.with(1, Color3::White));
        if (!(upm.component.at(0).is_identity() && upm.component.at(1) == f)) {
            detail = "(id,f) row mismatch";
            return false;
        }
        LabeledProductMap downm = d_arrow(h, gray, gray.with(1, Color3::Black));
        if (!downm.cod.factors.empty()) {
            detail = "projection row mismatch";
            return false;
        }
    }
    detail = "nine rows, exact";
    return true;
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion("1  atomic coherences (15 x 200, both backends)", 60, [](std::string& d) { return atomic_all(d); });
    criterion("2  gray-edge pushout lemma (exhaustive <= 5 whites)", 30,
              [](std::string& d) { return pushout_exhaustive(d); });
    criterion("3  gigantic category laws (500 triples)", 60, [](std::string& d) { return gigantic_laws(d); });
    criterion("4  calculus properties 2-5", 120, [](std::string& d) { return calculus_properties(d); });
    criterion("5  shadow bicategory coherence (100 route pairs)", 120, [](std::string& d) {
        SuiteResult r = shadow_coherence_suite(4, 20260809, 100);
        d = std::to_string(r.instances) + " route pairs";
        return r.ok();
    });
    criterion("6  Fuller and multitrace identity (100 tuples)", 60, [](std::string& d) {
        SuiteResult r = fuller_suite(4, 3, 20260809, 100);
        if (!r.witnesses.empty()) d = r.witnesses.front();
        return r.ok();
    });
    criterion("7  untwisting diagrams (100 instances)", 60, [](std::string& d) {
        SuiteResult r = untwisting_suite(3, 20260809, 100);
        if (!r.witnesses.empty()) d = r.witnesses.front();
        return r.ok();
    });
    criterion("8  cardinality map coherences (8 x 100 instances)", 60, [](std::string& d) {
        for (const auto& kind : h_kinds()) {
            SuiteResult r = h_suite(kind, 20260809, 100);
            if (!r.ok()) {
                d = kind + " failed";
                return false;
            }
        }
        return true;
    });
    criterion("9  rotation negative control (every seed unequal)", 5,
              [](std::string& d) { return rotation_negative_all(d); });
    criterion("10 D-table conformance (nine generator rows)", 60,
              [](std::string& d) { return d_table_conformance(d); });
    if (failures) std::printf("%d criteria FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
