#include "doctest.h"
#include "helpers.hpp"

using namespace shadowcalc;

namespace {

// a random family over a random one- or two-index base
Family random_family(Rng& rng, const LabeledProduct& base, int max_fiber = 2) {
    Family f;
    f.base = base;
    int next = 0;
    for (const auto& t : base.tuples()) {
        int n = rng.pick(0, max_fiber);
        for (int i = 0; i < n; ++i) f.insert(Elem::atom(next++), t);
    }
    return f;
}

LabeledProduct single_base(IndexId i, const BaseObject& a) { return LabeledProduct::single(i, a); }

LabeledProductMap lift(IndexId di, IndexId ci, const BaseMap& f) {
    return LabeledProductMap(single_base(di, f.dom), single_base(ci, f.cod), {{ci, di}}, {{ci, f}});
}

}  // namespace

TEST_CASE("pullback and pushforward basics") {
    Rng rng(3);
    BaseObject A = BaseObject::range(2), Bb = BaseObject::range(1);
    BaseMap f = random_map(rng, A, Bb);
    Family y = random_family(rng, single_base(0, Bb), 1);
    if (y.size() == 1) {
        Family fy = pullback(lift(0, 0, f), y);
        CHECK(fy.size() == 2);
    }
    CHECK(is_cartesian(cartesian_arrow(lift(0, 0, f), y)));

    Family x = random_family(rng, single_base(0, A), 3);
    Family fx = pushforward(lift(0, 0, f), x);
    CHECK(fx.size() == x.size());
    CHECK(is_cocartesian(cocartesian_arrow(lift(0, 0, f), x)));

    CHECK(pullback(LabeledProductMap::identity(y.base), y) == y);
}

TEST_CASE("extern product and unit") {
    Rng rng(5);
    Family x = random_family(rng, single_base(0, BaseObject::range(3)));
    Family y = random_family(rng, single_base(1, BaseObject::range(2)));
    Family xy = extern_product(x, y);
    CHECK(xy.size() == x.size() * y.size());

    CHECK(tensor_list({x}) == x);
    CHECK(tensor_list({}) == unit_family());
}

TEST_CASE("triangle identities for the adjunction") {
    Rng rng(7);
    for (int iter = 0; iter < 40; ++iter) {
        BaseObject A = random_base(rng, 4), Bb = random_base(rng, 3);
        BaseMap f0 = random_map(rng, A, Bb);
        LabeledProductMap f = lift(0, 0, f0);
        Family x = random_family(rng, single_base(0, A));
        Family y = random_family(rng, single_base(0, Bb));

        FamilyMap u = unit_map(f, x);
        FamilyMap pu = pushforward_map(f, u);
        FamilyMap c = counit_map(f, pushforward(f, x));
        CHECK(compose(pu, c) == FamilyMap::identity(pushforward(f, x)));

        FamilyMap u2 = unit_map(f, pullback(f, y));
        FamilyMap pc = pullback_map(f, counit_map(f, y));
        CHECK(compose(u2, pc) == FamilyMap::identity(pullback(f, y)));
    }
}

TEST_CASE("Beck-Chevalley bijection on pullback squares") {
    Rng rng(11);
    for (int iter = 0; iter < 40; ++iter) {
        BaseObject Bb = random_base(rng, 3), C = random_base(rng, 3), D = random_base(rng, 2);
        BaseMap g0 = random_map(rng, Bb, D), k0 = random_map(rng, C, D);
        std::vector<Elem> elems;
        std::map<Elem, Elem> fa, ha;
        for (const auto& b : Bb.elems)
            for (const auto& c : C.elems)
                if (g0(b) == k0(c)) {
                    Elem e = Elem::pair(b, c);
                    elems.push_back(e);
                    fa[e] = b;
                    ha[e] = c;
                }
        if (elems.empty()) continue;
        BaseObject A(elems);
        BaseMap f0(A, Bb, fa), h0(A, C, ha);
        LabeledProductMap f = lift(0, 0, f0), h = lift(0, 0, h0), g = lift(0, 0, g0), k = lift(0, 0, k0);
        Family z = random_family(rng, single_base(0, C));
        Bijection bc = beck_chevalley_iso(f, h, g, k, z);
        CHECK(bc.is_bijective());
        CHECK(compose(bc, bc.inverse()) == FamilyMap::identity(bc.dom));
    }
}

TEST_CASE("Beck-Chevalley rejects non-pullback squares") {
    BaseObject A = BaseObject::range(2), D = BaseObject::range(1);
    LabeledProductMap t = lift(0, 0, BaseMap(A, D, {{Elem::atom(0), Elem::atom(0)},
                                                    {Elem::atom(1), Elem::atom(0)}}));
    LabeledProductMap idd = LabeledProductMap::identity(single_base(0, D));
    Rng rng(1);
    Family z = random_family(rng, single_base(0, A), 2);
    CHECK_THROWS_AS(beck_chevalley_iso(t, t, idd, idd, z), NotBeckChevalley);
}

TEST_CASE("projection formula counts") {
    // f: {0,1} -> {0}, |M over 0| = 2, |N| = (1,3): both sides have 8 elements
    BaseObject A = BaseObject::range(2), Bb = BaseObject::range(1);
    BaseMap f0(A, Bb, {{Elem::atom(0), Elem::atom(0)}, {Elem::atom(1), Elem::atom(0)}});
    LabeledProductMap f = lift(0, 0, f0);
    Family m;
    m.base = single_base(0, Bb);
    m.insert(Elem::atom(0), {{0, Elem::atom(0)}});
    m.insert(Elem::atom(1), {{0, Elem::atom(0)}});
    Family n;
    n.base = single_base(0, A);
    n.insert(Elem::atom(10), {{0, Elem::atom(0)}});
    n.insert(Elem::atom(11), {{0, Elem::atom(1)}});
    n.insert(Elem::atom(12), {{0, Elem::atom(1)}});
    n.insert(Elem::atom(13), {{0, Elem::atom(1)}});
    Bijection pf = proj_formula(f, m, n);
    CHECK(pf.dom.size() == 8);
    CHECK(pf.cod.size() == 8);
    CHECK(pf.is_bijective());
}

TEST_CASE("extern of cocartesian arrows is cocartesian") {
    Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        BaseObject A = random_base(rng, 3), Bb = random_base(rng, 3);
        BaseObject A2 = random_base(rng, 3), B2 = random_base(rng, 3);
        LabeledProductMap f = lift(0, 0, random_map(rng, A, Bb));
        LabeledProductMap g = lift(1, 1, random_map(rng, A2, B2));
        Family x = random_family(rng, single_base(0, A));
        Family y = random_family(rng, single_base(1, A2));
        FamilyMap ca = extern_map(cocartesian_arrow(f, x), cocartesian_arrow(g, y));
        CHECK(is_cocartesian(ca));
        FamilyMap cc = extern_map(cartesian_arrow(f, pushforward(f, x)),
                                  cartesian_arrow(g, pushforward(g, y)));
        CHECK(is_cartesian(cc));
    }
}

TEST_CASE("tensor reassociation is a bijection") {
    Rng rng(17);
    std::map<int, Family> xs;
    for (int u = 0; u < 4; ++u) xs[u] = random_family(rng, single_base(u, BaseObject::range(2)), 2);
    std::map<int, int> sigma{{0, 0}, {1, 0}, {2, 1}, {3, 1}};
    std::map<int, int> tau{{0, 0}, {1, 0}};
    auto isos = iso_tensor_tensor(sigma, {0, 1}, tau, {0}, xs);
    REQUIRE(isos.size() == 1);
    CHECK(isos.at(0).is_bijective());
    std::map<int, int> sigma2{{0, 0}, {1, 1}, {2, 1}, {3, 2}};
    auto isos2 = iso_tensor_tensor(sigma2, {0, 1, 2}, {{0, 0}, {1, 0}, {2, 0}}, {0}, xs);
    CHECK(isos2.at(0).is_bijective());
}
