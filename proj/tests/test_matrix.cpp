#include "doctest.h"
#include "helpers.hpp"
#include "shadowcalc/cardinality.hpp"

using namespace shadowcalc;

namespace {

LabeledProduct single_base(IndexId i, const BaseObject& a) { return LabeledProduct::single(i, a); }

LabeledProductMap lift(IndexId di, IndexId ci, const BaseMap& f) {
    return LabeledProductMap(single_base(di, f.dom), single_base(ci, f.cod), {{ci, di}}, {{ci, f}});
}

MatrixObject random_module(Rng& rng, const LabeledProduct& base, int max_rank = 3) {
    MatrixObject x;
    x.base = base;
    for (const auto& t : base.tuples()) x.rank[tuple_elem(t)] = rng.pick(0, max_rank);
    return x;
}

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

}  // namespace

TEST_CASE("matrix basics") {
    Mat a(2, 2);
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    CHECK((a * a) == Mat::eye(2));
    CHECK(a.trace() == 0);
    CHECK(kron(Mat::eye(2), Mat::eye(3)) == Mat::eye(6));
    CHECK(unit_module().total_dim() == 1);
}

TEST_CASE("pushforward over a two-point fiber is a direct sum of ranks") {
    BaseObject A = BaseObject::range(2), Bb = BaseObject::range(1);
    BaseMap f0(A, Bb, {{Elem::atom(0), Elem::atom(0)}, {Elem::atom(1), Elem::atom(0)}});
    Rng rng(3);
    MatrixObject x = random_module(rng, single_base(0, A));
    MatrixObject fx = m_pushforward(lift(0, 0, f0), x);
    CHECK(fx.total_dim() == x.total_dim());
    CHECK(fx.rank.begin()->second == x.rank.at(tuple_elem({{0, Elem::atom(0)}})) +
                                         x.rank.at(tuple_elem({{0, Elem::atom(1)}})));
}

TEST_CASE("matrix canonical isomorphisms and triangle identities") {
    Rng rng(5);
    for (int iter = 0; iter < 30; ++iter) {
        BaseObject A = random_base(rng, 3), Bb = random_base(rng, 3), C = random_base(rng, 2);
        LabeledProductMap f = lift(0, 0, random_map(rng, A, Bb));
        LabeledProductMap g = lift(0, 0, random_map(rng, Bb, C));
        MatrixObject x = random_module(rng, single_base(0, A));
        MatrixObject z = random_module(rng, single_base(0, C));
        CHECK(m_iso_comp_push(f, g, x).is_bijective());
        CHECK(m_iso_comp_pull(f, g, z).is_bijective());

        MatrixMap u = m_unit_map(f, x);
        MatrixMap pu = m_pushforward_map(f, u);
        MatrixMap cmap = m_counit_map(f, m_pushforward(f, x));
        CHECK(compose(pu, cmap) == MatrixMap::identity(m_pushforward(f, x)));
        MatrixObject y = random_module(rng, single_base(0, Bb));
        MatrixMap u2 = m_unit_map(f, m_pullback(f, y));
        MatrixMap pc = m_pullback_map(f, m_counit_map(f, y));
        CHECK(compose(u2, pc) == MatrixMap::identity(m_pullback(f, y)));
    }
}

TEST_CASE("cardinality is a map of bifibrations") {
    Rng rng(7);
    for (int iter = 0; iter < 30; ++iter) {
        BaseObject A = random_base(rng, 3), Bb = random_base(rng, 3);
        LabeledProductMap f = lift(0, 0, random_map(rng, A, Bb));
        Family x = random_family(rng, single_base(0, A));
        CHECK(cardinality(pushforward(f, x)) == m_pushforward(f, cardinality(x)));
        CHECK(cardinality(pullback(f, random_family(rng, single_base(0, Bb)))).base == f.dom);
        CHECK(m_is_cocartesian(cardinality_map(cocartesian_arrow(f, x))));
        Family y = random_family(rng, single_base(0, Bb));
        CHECK(m_is_cartesian(cardinality_map(cartesian_arrow(f, y))));
        Family x1 = random_family(rng, single_base(1, Bb));
        MatrixMap hbox = h_extern_iso(x, x1);
        CHECK(hbox.is_bijective());
        CHECK(hbox.dom == m_extern(cardinality(x), cardinality(x1)));
        CHECK(hbox.cod == cardinality(extern_product(x, x1)));
    }
}
