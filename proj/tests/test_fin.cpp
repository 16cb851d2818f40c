#include "doctest.h"
#include "shadowcalc/labeled_product.hpp"

using namespace shadowcalc;

TEST_CASE("base objects and maps") {
    BaseObject a = BaseObject::range(3);
    CHECK(a.size() == 3);
    CHECK(star().size() == 1);

    BaseMap id = BaseMap::identity(a);
    CHECK(id.is_identity());
    CHECK(id.is_bijective());
    CHECK(compose(id, id) == id);

    BaseMap pi = BaseMap::to_star(a);
    CHECK_FALSE(pi.is_bijective());
    CHECK(compose(pi, BaseMap::identity(star())) == pi);

    BaseMap d = diagonal(a);
    CHECK(d(Elem::atom(1)) == Elem::pair(Elem::atom(1), Elem::atom(1)));

    BaseObject ab = product(a, BaseObject::range(2));
    CHECK(ab.size() == 6);
}

TEST_CASE("labeled product composition is associative") {
    Rng rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        LabeledProduct p1, p2, p3, p4;
        p1.factors[0] = random_base(rng, 3);
        p1.factors[1] = random_base(rng, 3);
        p2.factors[0] = random_base(rng, 3);
        p3.factors[2] = random_base(rng, 3);
        p4.factors[5] = random_base(rng, 3);

        auto rand_lpm = [&](const LabeledProduct& d, const LabeledProduct& c) {
            std::map<IndexId, IndexId> idx;
            std::map<IndexId, BaseMap> comps;
            for (const auto& [u, obj] : c.factors) {
                int pick = rng.pick(0, static_cast<int>(d.factors.size()) - 1);
                auto it = d.factors.begin();
                std::advance(it, pick);
                idx[u] = it->first;
                comps.emplace(u, random_map(rng, it->second, obj));
            }
            return LabeledProductMap(d, c, idx, comps);
        };
        auto f = rand_lpm(p1, p2);
        auto g = rand_lpm(p2, p3);
        auto h = rand_lpm(p3, p4);
        CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
        CHECK(compose(LabeledProductMap::identity(p1), f) == f);
        CHECK(compose(f, LabeledProductMap::identity(p2)) == f);
    }
}

TEST_CASE("Beck-Chevalley seed squares") {
    // external product of two maps
    Rng rng(9);
    for (int iter = 0; iter < 20; ++iter) {
        BaseObject A = random_base(rng, 4), Bb = random_base(rng, 4);
        BaseObject A2 = random_base(rng, 4), B2 = random_base(rng, 4);
        BaseMap f = random_map(rng, A, Bb);
        BaseMap f2 = random_map(rng, A2, B2);
        // square: 1 x f2 (top), f x 1 (left), f x 1 (right), 1 x f2 (bottom)
        BaseMap top = product_map(BaseMap::identity(A), f2);
        BaseMap left = product_map(f, BaseMap::identity(A2));
        BaseMap right = product_map(f, BaseMap::identity(B2));
        BaseMap bottom = product_map(BaseMap::identity(Bb), f2);
        CHECK(is_pullback_square(top, left, right, bottom));
    }

    // second seed square with A = {0,1}, B = {0}, C = {0,1,2}
    BaseObject A = BaseObject::range(2), Bb = BaseObject::range(1), C = BaseObject::range(3);
    Rng r3(3), r4(4);
    BaseMap f = random_map(r3, A, Bb);
    BaseMap g = random_map(r4, Bb, C);
    BaseMap gf = compose(f, g);
    // top: (1, g o f): A -> A x C; left: (1,f): A -> A x B;
    // right: (1,f) x 1: A x C -> A x B x C; bottom: 1 x (1,g): A x B -> A x B x C
    BaseObject AC = product(A, C), AB = product(A, Bb);
    BaseObject ABC = product({A, Bb, C});
    auto tuple3 = [](Elem a, Elem b, Elem c) { return Elem::tuple({a, b, c}); };
    std::map<Elem, Elem> topf, leftf, rightf, bottomf;
    for (const auto& a : A.elems) {
        topf[a] = Elem::pair(a, gf(a));
        leftf[a] = Elem::pair(a, f(a));
    }
    for (const auto& t : AC.elems) rightf[t] = tuple3(t.parts()[0], f(t.parts()[0]), t.parts()[1]);
    for (const auto& t : AB.elems) bottomf[t] = tuple3(t.parts()[0], t.parts()[1], g(t.parts()[1]));
    CHECK(is_pullback_square(BaseMap(A, AC, topf), BaseMap(A, AB, leftf), BaseMap(AC, ABC, rightf),
                             BaseMap(AB, ABC, bottomf)));
}

TEST_CASE("non-pullback square detected") {
    // two parallel non-injective maps with distinct fibers
    BaseObject A = BaseObject::range(2), D = BaseObject::range(1);
    BaseMap pa = BaseMap::to_star(A);
    // square A -> *, A -> *, * -> *, * -> * commutes but A x_* A has 4 points
    BaseMap to1(A, D, {{Elem::atom(0), Elem::atom(0)}, {Elem::atom(1), Elem::atom(0)}});
    (void)pa;
    CHECK_FALSE(is_pullback_square(to1, to1, BaseMap::identity(D), BaseMap::identity(D)));
}

TEST_CASE("labeled product Beck-Chevalley") {
    // diagrammatic external product in the labeled product category
    BaseObject A = BaseObject::range(2), Bb = BaseObject::range(3);
    BaseObject A2 = BaseObject::range(2), B2 = BaseObject::range(2);
    Rng rng(17);
    BaseMap f = random_map(rng, A, Bb), f2 = random_map(rng, A2, B2);
    LabeledProduct pAA2;
    pAA2.factors = {{0, A}, {1, A2}};
    LabeledProduct pAB2;
    pAB2.factors = {{0, A}, {1, B2}};
    LabeledProduct pBA2;
    pBA2.factors = {{0, Bb}, {1, A2}};
    LabeledProduct pBB2;
    pBB2.factors = {{0, Bb}, {1, B2}};
    auto mk = [](const LabeledProduct& d, const LabeledProduct& c, BaseMap m0, BaseMap m1) {
        return LabeledProductMap(d, c, {{0, 0}, {1, 1}}, {{0, m0}, {1, m1}});
    };
    auto top = mk(pAA2, pAB2, BaseMap::identity(A), f2);
    auto left = mk(pAA2, pBA2, f, BaseMap::identity(A2));
    auto right = mk(pAB2, pBB2, f, BaseMap::identity(B2));
    auto bottom = mk(pBA2, pBB2, BaseMap::identity(Bb), f2);
    CHECK(is_beck_chevalley(top, left, right, bottom));
}
