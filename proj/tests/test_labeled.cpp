#include "doctest.h"
#include "helpers.hpp"

using namespace shadowcalc;
using namespace shadowcalc::testing;

TEST_CASE("labeled validation") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W}, {b, b});
    CHECK(validate_labeled(g).valid());

    auto bad = make_path({W, W, W}, {b, b});
    bad.orient.at(1) = {0, 0};
    CHECK(validate_labeled(bad).has("OrientationLoop"));

    auto mism = make_path({W, W, W}, {b, BaseObject::range(3)});
    CHECK(validate_labeled(mism).has("LabelTypeMismatch"));

    Rng rng(1);
    BaseMap f = random_map(rng, b, BaseObject::range(3));
    auto ok = make_path({W, W, W}, {b, BaseObject::range(3)}, {{1, f}});
    CHECK(validate_labeled(ok).valid());
}

TEST_CASE("maximal cut of the composition path") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W, B, W}, {b, b, b, b});
    Constellation c = maximal_cut(g);
    CHECK(c.star_count == 2);
    CHECK(c.star_of_edge.size() == 4);
    CHECK(c.star_of_edge.at(0) == c.star_of_edge.at(1));
    CHECK(c.star_of_edge.at(2) == c.star_of_edge.at(3));
    CHECK(c.star_of_edge.at(0) != c.star_of_edge.at(2));
    // each star has one black and two leaves
    CHECK(validate_labeled(c.graph).valid());
}

TEST_CASE("maximal cut of the 12-vertex circle") {
    BaseObject b = BaseObject::range(2);
    std::vector<Color2> colors(12, W);
    colors[0] = colors[4] = colors[8] = B;
    auto g = make_cycle(colors, std::vector<BaseObject>(12, b));
    Constellation c = maximal_cut(g);
    CHECK(c.star_count == 3);
    CHECK(c.star_of_edge.size() == 6);  // two edges per star survive
}

TEST_CASE("maximal cut of a lone star is itself") {
    BaseObject b = BaseObject::range(3);
    LabeledGraph star;
    star.graph.vertices = {{0, B}, {1, W}, {2, W}, {3, W}};
    star.graph.edges = {{0, {0, 1}}, {1, {0, 2}}, {2, {0, 3}}};
    star.edge_label = {{0, b}, {1, b}, {2, b}};
    Constellation c = maximal_cut(star);
    CHECK(c.star_count == 1);
    CHECK(c.graph == star);
}

TEST_CASE("full darkening of a circle cuts to a leafless star") {
    BaseObject b = BaseObject::range(2);
    auto g = make_cycle({B, B}, {b, b});
    Constellation c = maximal_cut(g);
    CHECK(c.star_count == 1);
    CHECK(c.star_of_edge.empty());
    CHECK(c.graph.graph.vertices.size() == 1);
}

TEST_CASE("cut_along") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W, B, W}, {b, b, b, b});
    SUBCASE("empty cut leaves the graph alone") { CHECK(cut_along(g, {}) == g); }
    SUBCASE("cutting the middle white gives two paths") {
        LabeledGraph cut = cut_along(g, {2});
        CHECK(cut.graph.vertices.size() == 6);
        CHECK(cut.graph.edges.size() == 4);
        auto comp = cut.graph.components();
        std::set<VertexId> roots;
        for (auto& [v, r] : comp) roots.insert(r);
        CHECK(roots.size() == 2);
    }
    SUBCASE("cut set must be internal white") {
        CHECK_THROWS_AS(cut_along(g, {1}), NotInternalWhite);
    }
}

TEST_CASE("inert checks") {
    BaseObject b = BaseObject::range(2);
    BaseMap swap(b, b, {{Elem::atom(0), Elem::atom(1)}, {Elem::atom(1), Elem::atom(0)}});

    SUBCASE("darkening an identity-labeled white next to a black is inert") {
        auto g = make_path({W, B, W, W}, {b, b, b});
        CHECK(is_inert(darkening_map(g, {2})));
    }
    SUBCASE("darkening a non-identity-labeled vertex is not inert") {
        auto g = make_path({W, B, W, W}, {b, b, b}, {{2, swap}});
        CHECK_FALSE(is_inert(darkening_map(g, {2})));
    }
    SUBCASE("collapsing two adjacent identity-labeled whites is inert") {
        auto g = make_path({W, W, W, W}, {b, b, b});
        CHECK(is_inert(collapse_adjacent_whites(g, 1)));
    }
    SUBCASE("a two-fold cover is not inert") {
        auto cov = trivial_cover({b, b}, {b, b});
        CHECK(validate_labeled_map(cov).valid());
        CHECK_FALSE(is_inert(cov));
    }
    SUBCASE("identity is inert") {
        auto g = make_path({W, B, W}, {b, b});
        CHECK(is_inert(LabeledGraphMap::identity(g)));
    }
}

TEST_CASE("labeled composition") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, W, W, W}, {b, b, b});
    auto c1 = collapse_adjacent_whites(g, 1);
    auto id = LabeledGraphMap::identity(g);
    CHECK(compose_labeled(id, c1) == c1);
    CHECK(compose_labeled(c1, LabeledGraphMap::identity(c1.target)) == c1);

    // associativity through a collapse chain and a darkening
    auto c2 = darkening_map(c1.target, {1});
    auto c3 = LabeledGraphMap::identity(c2.target);
    CHECK(compose_labeled(compose_labeled(c1, c2), c3) == compose_labeled(c1, compose_labeled(c2, c3)));
    CHECK(validate_labeled_map(compose_labeled(c1, c2)).valid());
}

TEST_CASE("covering composition reassociates identifications") {
    BaseObject b = BaseObject::range(2);
    BaseObject bb = ordered_product({b, b});
    // mid: two bb-labeled sheets over the base
    auto mid = trivial_cover({bb, bb}, {bb, bb});
    // four b-labeled sheets over the two sheets of mid, pairwise
    LabeledGraph src;
    LabeledGraphMap fine;
    for (int j = 0; j < 4; ++j) {
        VertexId v0 = 10 + 3 * j;
        EdgeId e0 = 10 + 2 * j;
        src.graph.vertices[v0] = W;
        src.graph.vertices[v0 + 1] = B;
        src.graph.vertices[v0 + 2] = W;
        src.graph.edges[e0] = {v0, v0 + 1};
        src.graph.edges[e0 + 1] = {v0 + 1, v0 + 2};
        src.edge_label[e0] = b;
        src.edge_label[e0 + 1] = b;
        VertexId w0 = 10 + 3 * (j / 2);
        EdgeId f0 = 10 + 2 * (j / 2);
        fine.underlying.vmap[v0] = w0;
        fine.underlying.vmap[v0 + 1] = w0 + 1;
        fine.underlying.vmap[v0 + 2] = w0 + 2;
        fine.underlying.emap[e0] = EdgeImage::edge(f0);
        fine.underlying.emap[e0 + 1] = EdgeImage::edge(f0 + 1);
    }
    fine.source = src;
    fine.target = mid.source;
    fine.underlying.source = src.graph;
    fine.underlying.target = mid.source.graph;
    for (const auto& [e, lab] : mid.source.edge_label) {
        std::map<Elem, Elem> fn;
        for (const Elem& x : lab.elems) fn[x] = x;  // bb equals product(b, b)
        fine.iota.emplace(e, BaseMap(lab, lab, std::move(fn)));
    }
    CHECK(validate_labeled_map(fine).valid());
    CHECK(validate_labeled_map(mid).valid());
    auto comp = compose_labeled(fine, mid);
    CHECK(validate_labeled_map(comp).valid());
    // the composite identification is the reassociation ((x,y),(z,w)) -> (x,y,z,w)
    const BaseMap& io = comp.iota.at(0);
    for (const Elem& x : io.dom.elems) {
        std::vector<Elem> flat{x.parts()[0].parts()[0], x.parts()[0].parts()[1],
                               x.parts()[1].parts()[0], x.parts()[1].parts()[1]};
        CHECK(io(x) == Elem::tuple(flat));
    }
}

TEST_CASE("disjoint union and cut components") {
    BaseObject b = BaseObject::range(2);
    auto g1 = make_path({W, B, W}, {b, b});
    auto g2 = make_path({W, B, W, B, W}, {b, b, b, b});
    DisjointUnion u = disjoint_union(g1, g2);
    CHECK(validate_labeled(u.graph).valid());
    CHECK(maximal_cut(u.graph).star_count ==
          maximal_cut(g1).star_count + maximal_cut(g2).star_count);
}

TEST_CASE("cut set validation") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W, B, W}, {b, b, b, b});
    GraphDiagram d;
    d.objects = {{0, g}, {1, g}};
    d.arrows = {{0, {0, 1, LabeledGraphMap::identity(g)}}};
    CHECK(validate_cut_set(d, {{0, {2}}, {1, {2}}}).valid());
    CHECK_FALSE(validate_cut_set(d, {{0, {2}}, {1, {}}}).valid());
    CHECK(validate_cut_set(d, {{0, {1}}, {1, {1}}}).has("NotInternalWhite"));
}

TEST_CASE("pi0 functoriality") {
    BaseObject b = BaseObject::range(2);
    auto g = make_path({W, B, W, B, W}, {b, b, b, b});
    auto m = darkening_map(g, {2});
    auto p = pi0_psi(m);
    CHECK(p.size() == 2);
    CHECK(p.at(0) == p.at(1));  // both stars merge

    auto id = LabeledGraphMap::identity(g);
    auto q = pi0_psi(id);
    for (auto& [s, t] : q) CHECK(s == t);

    // functoriality on a composable pair
    auto m2 = LabeledGraphMap::identity(m.target);
    auto comp = pi0_psi(compose_labeled(m, m2));
    for (auto& [s, t] : comp) CHECK(t == pi0_psi(m2).at(pi0_psi(m).at(s)));
}

TEST_CASE("maximal cut is idempotent up to the capping relabels") {
    BaseObject b = BaseObject::range(2);
    Rng rng(51);
    for (int iter = 0; iter < 30; ++iter) {
        int k = rng.pick(2, 6);
        std::vector<Color2> colors{W};
        for (int i = 0; i < k; ++i) colors.push_back(rng.pick(0, 1) ? B : W);
        colors.push_back(W);
        auto g = make_path(colors, std::vector<BaseObject>(colors.size() - 1, b));
        if (!validate_labeled(g).valid()) continue;
        Constellation once = maximal_cut(g);
        Constellation twice = maximal_cut(once.graph);
        CHECK(twice.star_count == once.star_count);
        CHECK(twice.star_of_edge == once.star_of_edge);
        // the edge sets agree; only cap vertex ids may differ
        CHECK(twice.graph.edge_label == once.graph.edge_label);
    }
}

TEST_CASE("cutting distributes over disjoint unions") {
    BaseObject b = BaseObject::range(2);
    Rng rng(53);
    for (int iter = 0; iter < 30; ++iter) {
        auto mk = [&](int k) {
            std::vector<Color2> colors{W};
            for (int i = 0; i < k; ++i) colors.push_back(i % 2 ? W : B);
            colors.push_back(W);
            return make_path(colors, std::vector<BaseObject>(static_cast<std::size_t>(k) + 1, b));
        };
        auto g1 = mk(rng.pick(1, 4));
        auto g2 = mk(rng.pick(1, 4));
        DisjointUnion u = disjoint_union(g1, g2);
        Constellation cu = maximal_cut(u.graph);
        Constellation c1 = maximal_cut(g1);
        Constellation c2 = maximal_cut(g2);
        CHECK(cu.star_count == c1.star_count + c2.star_count);
        // left stars keep their edges; right stars carry the relabeled edges
        for (const auto& [e, s] : c1.star_of_edge) CHECK(cu.star_of_edge.count(e));
        for (const auto& [e, s] : c2.star_of_edge) CHECK(cu.star_of_edge.count(u.right_edge.at(e)));
    }
}
