#include "doctest.h"
#include "helpers.hpp"
#include "shadowcalc/ddiagram.hpp"

using namespace shadowcalc;
using namespace shadowcalc::testing;

namespace {

Coloring colored(const LabeledGraph& g, std::map<VertexId, Color3> shades) {
    Coloring c = Coloring::all_white(g);
    for (auto& [v, s] : shades) c.shades.at(v) = s;
    return c;
}

std::vector<EdgeId> reps_of(const LabeledGraph& g, const Coloring& c) {
    return gray_edges(g, c).reps();
}

}  // namespace

TEST_CASE("gray edges of the two-edge path") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, B}, {b, b});
    CHECK(reps_of(g, colored(g, {{1, Color3::White}})) == std::vector<EdgeId>{0, 1});
    CHECK(reps_of(g, colored(g, {{1, Color3::Gray}})) == std::vector<EdgeId>{0});
    CHECK(reps_of(g, colored(g, {{1, Color3::Black}})) == std::vector<EdgeId>{});
}

TEST_CASE("gray edges functor on the three-edge string") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, W, W}, {b, b, b});
    auto c = [&](Color3 a, Color3 b2) { return colored(g, {{1, a}, {2, b2}}); };
    const Color3 O = Color3::White, G = Color3::Gray, K = Color3::Black;
    // the nine colorings and their representative sets
    CHECK(reps_of(g, c(O, O)) == std::vector<EdgeId>{0});
    CHECK(reps_of(g, c(O, G)) == std::vector<EdgeId>{0, 1});
    CHECK(reps_of(g, c(O, K)) == std::vector<EdgeId>{0, 1, 2});
    CHECK(reps_of(g, c(G, O)) == std::vector<EdgeId>{0});
    CHECK(reps_of(g, c(G, G)) == std::vector<EdgeId>{0});
    CHECK(reps_of(g, c(G, K)) == std::vector<EdgeId>{0, 2});
    CHECK(reps_of(g, c(K, O)) == std::vector<EdgeId>{1});
    CHECK(reps_of(g, c(K, G)) == std::vector<EdgeId>{1});
    CHECK(reps_of(g, c(K, K)) == std::vector<EdgeId>{2});

    // containment map for the middle-right square {a,b,c} -> {a,bc}
    auto m = gray_edges_map(g, c(O, K), c(O, G));
    CHECK(m == std::map<EdgeId, EdgeId>{{0, 0}, {1, 1}, {2, 1}});

    // grayer order
    CHECK(grayer_leq(g, c(O, O), c(O, O)));
    CHECK(grayer_leq(g, c(O, O), c(G, G)));
    CHECK(grayer_leq(g, c(K, O), c(G, O)));
    CHECK_FALSE(grayer_leq(g, c(K, O), c(O, O)));

    // common graying
    CHECK(common_graying(g, c(O, K), c(O, K)) == c(O, K));
    CHECK(common_graying(g, c(O, O), c(K, K)) == c(G, G));
    CHECK(common_graying(g, c(K, O), c(O, K)) == c(G, G));
}

TEST_CASE("all-gray cycles") {
    BaseObject b = BaseObject::range(2);
    auto g = make_cycle({W, W, W}, {b, b, b});
    Coloring c = colored(g, {{0, Color3::Gray}, {1, Color3::Gray}, {2, Color3::Gray}});
    auto s = gray_edges(g, c);
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].cycle);
    CHECK(s.edges[0].rep == 0);
    CHECK(s.edges[0].edges.size() == 3);

    BaseMap swap(b, b, {{Elem::atom(0), Elem::atom(1)}, {Elem::atom(1), Elem::atom(0)}});
    auto g2 = make_cycle({W, W, W}, {b, b, b}, {{0, swap}});
    CHECK_THROWS_AS(gray_edges(g2, c), UnsupportedGrayCycle);

    // two swaps compose to the identity around the cycle
    auto g3 = make_cycle({W, W, W}, {b, b, b}, {{0, swap}, {1, swap}});
    CHECK(gray_edges(g3, c).edges.size() == 1);
}

TEST_CASE("pushout lemma, exhaustive on small strings") {
    BaseObject b = BaseObject::range(2);
    int squares = 0;
    for (int k = 2; k <= 4; ++k) {
        for (int ends = 0; ends < 4; ++ends) {
            std::vector<Color2> colors;
            colors.push_back(ends & 1 ? B : W);
            for (int i = 0; i < k; ++i) colors.push_back(W);
            colors.push_back(ends & 2 ? B : W);
            auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b));
            if (!validate_labeled(g).valid()) continue;
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
                        CHECK(check_pushout(g, c, vw, vb));
                        ++squares;
                    }
                }
        }
    }
    CHECK(squares > 100);
}

TEST_CASE("canonical form of zig-zags") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, W, W, W, B}, {b, b, b, b, b});
    auto glue_const = [&](const Coloring& c, int u) {
        std::map<EdgeId, int> m;
        for (EdgeId rep : reps_of(g, c)) m[rep] = u;
        return m;
    };
    SUBCASE("single flip is its own canonical form") {
        Coloring c0 = Coloring::all_white(g);
        Coloring c1 = c0.with(2, Color3::Gray);
        CanonicalForm f = canonical_form(g, {{c0, glue_const(c0, 0)}, {c1, glue_const(c1, 0)}});
        CHECK(f.lighter == c0);
        CHECK(f.darker == c1);
        CHECK(f.graying == c1);
    }
    SUBCASE("gray-then-black at one vertex forces the glue") {
        Coloring c0 = Coloring::all_white(g);
        Coloring c1 = c0.with(2, Color3::Gray);
        Coloring c2 = c0.with(2, Color3::Black);
        CanonicalForm f = canonical_form(
            g, {{c0, glue_const(c0, 3)}, {c1, glue_const(c1, 3)}, {c2, glue_const(c2, 3)}});
        CHECK(f.graying == c1);
        for (auto& [rep, u] : f.glue) CHECK(u == 3);
    }
    SUBCASE("reordering two commuting flips gives the same form") {
        Coloring c0 = Coloring::all_white(g);
        Coloring a1 = c0.with(1, Color3::Gray);
        Coloring a2 = a1.with(3, Color3::Gray);
        Coloring b1 = c0.with(3, Color3::Gray);
        Coloring b2 = b1.with(1, Color3::Gray);
        CHECK(a2 == b2);
        auto f1 = canonical_form(
            g, {{c0, glue_const(c0, 0)}, {a1, glue_const(a1, 0)}, {a2, glue_const(a2, 0)}});
        auto f2 = canonical_form(
            g, {{c0, glue_const(c0, 0)}, {b1, glue_const(b1, 0)}, {b2, glue_const(b2, 0)}});
        CHECK(f1.graying == f2.graying);
        CHECK(f1.glue == f2.glue);
    }
    SUBCASE("inconsistent glue is rejected") {
        Coloring c0 = Coloring::all_white(g);
        Coloring c1 = c0.with(2, Color3::Gray);
        auto z0 = glue_const(c0, 0);
        auto z1 = glue_const(c1, 1);
        CHECK_THROWS_AS(canonical_form(g, {{c0, z0}, {c1, z1}}), InconsistentGlue);
    }
}

TEST_CASE("random zig-zags match the explicit colimit") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, W, W, W, W, W}, {b, b, b, b, b});
    Rng rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<Coloring> chain{Coloring::all_white(g)};
        for (int s = 0; s < 6; ++s) {
            const Coloring& cur = chain.back();
            std::vector<std::pair<VertexId, Color3>> moves;
            for (auto& [v, sh] : cur.shades) {
                if (sh == Color3::White) moves.push_back({v, Color3::Gray});
                if (sh == Color3::Gray) moves.push_back({v, Color3::Black});
            }
            if (moves.empty()) break;
            auto mv = moves[static_cast<std::size_t>(rng.pick(0, static_cast<int>(moves.size()) - 1))];
            chain.push_back(cur.with(mv.first, mv.second));
        }
        Coloring graying = common_graying(g, chain.front(), chain.back());
        std::map<EdgeId, int> final_glue;
        for (EdgeId rep : reps_of(g, graying)) final_glue[rep] = rep % 2;
        std::vector<ZigZagStep> steps;
        for (const auto& c : chain) {
            std::map<EdgeId, int> z;
            for (const auto& [s, t] : gray_edges_map(g, c, graying)) z[s] = final_glue.at(t);
            steps.push_back({c, z});
        }
        CanonicalForm f = canonical_form(g, steps);
        CHECK(f.graying == graying);
        CHECK(f.glue == final_glue);
    }
}

namespace {

LabeledGraphMap random_darkening(Rng& rng, const LabeledGraph& g) {
    std::vector<VertexId> picks;
    for (VertexId v : g.graph.internal_whites())
        if (rng.pick(0, 1)) picks.push_back(v);
    return darkening_map(g, picks);
}

}  // namespace

TEST_CASE("gigantic category laws") {
    BaseObject b = BaseObject::range(2);
    Rng rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        int k = rng.pick(1, 6);
        std::vector<Color2> colors{B};
        for (int i = 0; i < k; ++i) colors.push_back(W);
        colors.push_back(B);
        auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b));
        auto m1 = random_darkening(rng, g);
        auto m2 = random_darkening(rng, m1.target);
        auto m3 = random_darkening(rng, m2.target);
        GiganticMorphism e1 = embed(m1), e2 = embed(m2), e3 = embed(m3);
        CHECK(validate_gigantic(e1).valid());
        CHECK(compose_gigantic(gigantic_identity(e1.dom), e1) == e1);
        CHECK(compose_gigantic(e1, gigantic_identity(e1.cod)) == e1);
        CHECK(compose_gigantic(compose_gigantic(e1, e2), e3) ==
              compose_gigantic(e1, compose_gigantic(e2, e3)));
        CHECK(compose_gigantic(e1, e2) == embed(compose_labeled(m1, m2)));
    }
}

TEST_CASE("embedding values") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W, B, W}, {b, b, b, b});
    GiganticObject x = embed_obj(g);
    CHECK(x.universe == std::vector<int>{0, 1});
    CHECK(x.glue == std::map<EdgeId, int>{{0, 0}, {1, 0}, {2, 1}, {3, 1}});
    GiganticMorphism id = embed(LabeledGraphMap::identity(g));
    CHECK(id == gigantic_identity(x));

    auto m = darkening_map(g, {2});
    GiganticMorphism e = embed(m);
    CHECK(e.cod.universe == std::vector<int>{0});
    CHECK(e.set_map == std::map<int, int>{{0, 0}, {1, 0}});
}

TEST_CASE("rotation respects Beck-Chevalley on labeled strings") {
    BaseObject b = BaseObject::range(2);
    SUBCASE("identity labels") {
        auto g = make_path({B, W, W, B}, {b, b, b});
        CHECK(check_rotation_bc(g).valid());
    }
    SUBCASE("composable random labels") {
        Rng rng(5);
        BaseObject b0 = BaseObject::range(2), b1 = BaseObject::range(3), b2 = BaseObject::range(2);
        BaseMap f1 = random_map(rng, b0, b1), f2 = random_map(rng, b1, b2);
        auto g = make_path({B, W, W, B}, {b0, b1, b2}, {{1, f1}, {2, f2}});
        CHECK(check_rotation_bc(g).valid());
    }
    SUBCASE("exhaustive on four internal whites") {
        auto g = make_path({B, W, W, W, W, B}, {b, b, b, b, b});
        CHECK(check_rotation_bc(g).valid());
    }
}

TEST_CASE("d_object values from the small-graphs table") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, B}, {b, b});
    CHECK(d_object(g, colored(g, {{1, Color3::Gray}})) == LabeledProduct::single(0, b));
    LabeledProduct bb;
    bb.factors = {{0, b}, {1, b}};
    CHECK(d_object(g, colored(g, {{1, Color3::White}})) == bb);
    CHECK(d_object(g, colored(g, {{1, Color3::Black}})) == LabeledProduct::empty());
}

TEST_CASE("d_arrow on the two-edge path") {
    BaseObject b = BaseObject::range(2);
    Rng rng(2);
    BaseMap f = random_map(rng, b, b);
    auto g = make_path({B, W, B}, {b, b}, {{1, f}});
    Coloring gray = colored(g, {{1, Color3::Gray}});
    Coloring white = colored(g, {{1, Color3::White}});
    Coloring black = colored(g, {{1, Color3::Black}});

    LabeledProductMap up = d_arrow(g, gray, white);
    CHECK(up.index_map == std::map<IndexId, IndexId>{{0, 0}, {1, 0}});
    CHECK(up.component.at(0).is_identity());
    CHECK(up.component.at(1) == f);

    LabeledProductMap down = d_arrow(g, gray, black);
    CHECK(down.cod == LabeledProduct::empty());
    CHECK(down.index_map.empty());

    CHECK_THROWS_AS(d_arrow(g, white, black), NotSingleFlip);
}

TEST_CASE("gray edges functor preserves identities and composites") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, W, W, W, W, B}, std::vector<BaseObject>(6, b));
    Rng rng(57);
    for (int iter = 0; iter < 50; ++iter) {
        Coloring c = Coloring::all_white(g);
        for (auto& [v, s] : c.shades) s = static_cast<Color3>(rng.pick(0, 2));
        // identity containment
        auto idm = gray_edges_map(g, c, c);
        for (auto& [s, t] : idm) CHECK(s == t);
        // composite containment along a two-step graying
        Coloring d = c, e = c;
        for (auto& [v, s] : d.shades)
            if (rng.pick(0, 1)) s = Color3::Gray;
        for (auto& [v, s] : e.shades) s = Color3::Gray;
        auto cd = gray_edges_map(g, c, d);
        auto de = gray_edges_map(g, d, e);
        auto ce = gray_edges_map(g, c, e);
        for (auto& [s, t] : ce) CHECK(t == de.at(cd.at(s)));
    }
}

TEST_CASE("embedding is injective and faithful on the corpus") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({B, W, W, W, B}, std::vector<BaseObject>(4, b));
    std::set<std::string> objs;
    std::vector<GiganticMorphism> morphisms;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<VertexId> dark;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) dark.push_back(i + 1);
        auto m = darkening_map(g, dark);
        GiganticMorphism e = embed(m);
        for (const auto& prev : morphisms) CHECK_FALSE(prev == e);
        morphisms.push_back(e);
    }
    // distinct darkened graphs give distinct objects
    std::vector<GiganticObject> seen;
    for (const auto& e : morphisms) {
        bool fresh = true;
        for (const auto& o : seen)
            if (o == e.cod) fresh = false;
        if (fresh) seen.push_back(e.cod);
    }
    CHECK(seen.size() == 8);
}
