#include "doctest.h"
#include "shadowcalc/graph.hpp"

using namespace shadowcalc;

namespace {

ColoredGraph path(std::initializer_list<Color2> colors) {
    ColoredGraph g;
    int v = 0;
    for (Color2 c : colors) g.vertices[v++] = c;
    for (int e = 0; e + 1 < v; ++e) g.edges[e] = {e, e + 1};
    return g;
}

const Color2 W = Color2::White, B = Color2::Black;

}  // namespace

TEST_CASE("graph validation") {
    CHECK(validate_graph(path({W, B, W})).valid());

    ColoredGraph isolated = path({W, B, W});
    isolated.vertices[9] = W;
    CHECK(validate_graph(isolated).has("IsolatedVertex"));

    ColoredGraph deg3 = path({W, W, W});
    deg3.vertices[3] = B;
    deg3.edges[9] = {1, 3};
    CHECK(validate_graph(deg3).has("WhiteDegreeExceeded"));

    ColoredGraph wloop;
    wloop.vertices[0] = W;
    wloop.edges[0] = {0, 0};
    CHECK(validate_graph(wloop).has("WhiteLoop"));

    ColoredGraph bloop;
    bloop.vertices[0] = B;
    bloop.edges[0] = {0, 0};
    CHECK(validate_graph(bloop).valid());
}

TEST_CASE("classification of the middle collapse") {
    // o-x-o-x-o onto o-x-o collapsing the middle three vertices to the black
    ColoredGraph src = path({W, B, W, B, W});
    ColoredGraph tgt = path({W, B, W});
    GraphMap m;
    m.source = src;
    m.target = tgt;
    m.vmap = {{0, 0}, {1, 1}, {2, 1}, {3, 1}, {4, 2}};
    m.emap = {{0, EdgeImage::edge(0)},
              {1, EdgeImage::vertex(1)},
              {2, EdgeImage::vertex(1)},
              {3, EdgeImage::edge(1)}};
    CHECK(validate_map(m).valid());
    CHECK(classify_map(m) == MorphismClass::General);  // darkening then collapsing

    auto [d, c, v] = factorize(m);
    CHECK(is_darkening(d));
    CHECK(is_collapsing(c));
    CHECK(is_covering(v));
    CHECK(classify_map(d) == MorphismClass::Darkening);
    CHECK(classify_map(c) == MorphismClass::Collapsing);
    CHECK(compose_maps(compose_maps(d, c), v) == m);
}

TEST_CASE("identity classifies as collapsing") {
    auto g = path({W, B, W});
    auto id = GraphMap::identity(g);
    CHECK(is_collapsing(id));
    CHECK(is_covering(id));
    CHECK(is_darkening(id));
    CHECK(classify_map(id) == MorphismClass::Collapsing);
}

TEST_CASE("two-fold cover classifies as covering") {
    ColoredGraph tgt = path({W, B, W});
    ColoredGraph src;
    for (int i = 0; i < 2; ++i) {
        src.vertices[3 * i] = W;
        src.vertices[3 * i + 1] = B;
        src.vertices[3 * i + 2] = W;
        src.edges[2 * i] = {3 * i, 3 * i + 1};
        src.edges[2 * i + 1] = {3 * i + 1, 3 * i + 2};
    }
    GraphMap m;
    m.source = src;
    m.target = tgt;
    for (int i = 0; i < 2; ++i) {
        m.vmap[3 * i] = 0;
        m.vmap[3 * i + 1] = 1;
        m.vmap[3 * i + 2] = 2;
        m.emap[2 * i] = EdgeImage::edge(0);
        m.emap[2 * i + 1] = EdgeImage::edge(1);
    }
    CHECK(classify_map(m) == MorphismClass::Covering);
}

TEST_CASE("composition laws") {
    auto g = path({W, B, W, B, W});
    auto id = GraphMap::identity(g);

    ColoredGraph tgt = path({W, B, W});
    GraphMap m;
    m.source = g;
    m.target = tgt;
    m.vmap = {{0, 0}, {1, 1}, {2, 1}, {3, 1}, {4, 2}};
    m.emap = {{0, EdgeImage::edge(0)},
              {1, EdgeImage::vertex(1)},
              {2, EdgeImage::vertex(1)},
              {3, EdgeImage::edge(1)}};
    CHECK(compose_maps(id, m) == m);
    CHECK(compose_maps(m, GraphMap::identity(tgt)) == m);
    CHECK_THROWS_AS(compose_maps(m, m), CompositionMismatch);
}

namespace {

// random valid morphism: darken some vertices, then collapse a few
// same-colored edges; recomposition and classification are the oracles
GraphMap random_morphism(Rng& rng, const ColoredGraph& g) {
    ColoredGraph g1 = g;
    for (auto& [v, c] : g1.vertices)
        if (g.is_internal_white(v) && rng.pick(0, 1)) c = Color2::Black;
    GraphMap total = GraphMap::identity(g);
    total.target = g1;
    for (int round = 0; round < 2; ++round) {
        const ColoredGraph& h = total.target;
        std::vector<EdgeId> candidates;
        for (const auto& [e, ends] : h.edges)
            if (ends.first != ends.second && h.color(ends.first) == h.color(ends.second))
                candidates.push_back(e);
        if (candidates.empty()) break;
        EdgeId pick = candidates[static_cast<std::size_t>(rng.pick(0, static_cast<int>(candidates.size()) - 1))];
        auto ends = h.edges.at(pick);
        VertexId keep = std::min(ends.first, ends.second), lose = std::max(ends.first, ends.second);
        ColoredGraph q;
        for (const auto& [v, c] : h.vertices)
            if (v != lose) q.vertices[v] = c;
        GraphMap step;
        step.source = h;
        for (const auto& [v, c] : h.vertices) step.vmap[v] = v == lose ? keep : v;
        for (const auto& [e, ends2] : h.edges) {
            if (e == pick) {
                step.emap[e] = EdgeImage::vertex(keep);
                continue;
            }
            q.edges[e] = {step.vmap.at(ends2.first), step.vmap.at(ends2.second)};
            step.emap[e] = EdgeImage::edge(e);
        }
        step.target = q;
        if (!validate_map(step).valid()) continue;
        total = compose_maps(total, step);
    }
    return total;
}

ColoredGraph random_path(Rng& rng, int max_n) {
    int n = rng.pick(3, max_n);
    ColoredGraph g;
    for (int v = 0; v < n; ++v)
        g.vertices[v] = (v % 2 == 1 || rng.pick(0, 2) == 0) ? Color2::Black : Color2::White;
    for (int e = 0; e + 1 < n; ++e) g.edges[e] = {e, e + 1};
    return g;
}

}  // namespace

TEST_CASE("factorization round-trip on random morphisms") {
    Rng rng(7);
    int done = 0;
    for (int iter = 0; iter < 300 && done < 200; ++iter) {
        ColoredGraph g = random_path(rng, 8);
        if (!validate_graph(g).valid()) continue;
        GraphMap m = random_morphism(rng, g);
        if (!validate_map(m).valid()) continue;
        ++done;
        auto [d, c, v] = factorize(m);
        CHECK(is_darkening(d));
        CHECK(is_collapsing(c));
        CHECK(is_covering(v));
        CHECK(compose_maps(compose_maps(d, c), v) == m);
    }
    CHECK(done >= 100);
}

TEST_CASE("class closure and associativity") {
    Rng rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        ColoredGraph g = random_path(rng, 6);
        if (!validate_graph(g).valid()) continue;
        GraphMap m1 = random_morphism(rng, g);
        GraphMap m2 = random_morphism(rng, m1.target);
        GraphMap m3 = random_morphism(rng, m2.target);
        if (is_collapsing(m1) && is_collapsing(m2)) CHECK(is_collapsing(compose_maps(m1, m2)));
        if (is_covering(m1) && is_covering(m2)) CHECK(is_covering(compose_maps(m1, m2)));
        CHECK(compose_maps(compose_maps(m1, m2), m3) == compose_maps(m1, compose_maps(m2, m3)));
    }
}
