#include "shadowcalc/coherence.hpp"

namespace shadowcalc {

namespace {

LabeledProductMap lift1(IndexId di, IndexId ci, const BaseMap& f) {
    return LabeledProductMap(LabeledProduct::single(di, f.dom), LabeledProduct::single(ci, f.cod),
                             {{ci, di}}, {{ci, f}});
}

Family rand_family(Rng& rng, const LabeledProduct& base, int max_fiber = 2, int salt = 0) {
    Family f;
    f.base = base;
    int next = 1000 * salt;
    for (const auto& t : base.tuples()) {
        int n = rng.pick(0, max_fiber);
        for (int i = 0; i < n; ++i) f.insert(Elem::atom(next++), t);
    }
    return f;
}

bool check_h_pull_pull(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift1(0, 0, random_map(rng, f.cod.factors.at(0), random_base(rng, 3)));
    Family z = rand_family(rng, g.cod);
    MatrixObject hz = cardinality(z);
    MatrixMap r1 = compose(m_iso_comp_pull(f, g, hz),
                           compose(m_pullback_map(f, h_pull_iso(g, z)), h_pull_iso(f, pullback(g, z))));
    MatrixMap r2 = compose(h_pull_iso(compose(f, g), z), cardinality_map(iso_comp_pull(f, g, z)));
    return r1 == r2;
}

bool check_h_push_push(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift1(0, 0, random_map(rng, f.cod.factors.at(0), random_base(rng, 3)));
    Family x = rand_family(rng, f.dom);
    MatrixObject hx = cardinality(x);
    MatrixMap r1 = compose(m_iso_comp_push(f, g, hx),
                           compose(m_pushforward_map(g, h_push_iso(f, x)), h_push_iso(g, pushforward(f, x))));
    MatrixMap r2 = compose(h_push_iso(compose(f, g), x), cardinality_map(iso_comp_push(f, g, x)));
    return r1 == r2;
}

bool check_h_unit(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    Family x = rand_family(rng, f.dom);
    MatrixMap r1 = compose(m_unit_map(f, cardinality(x)),
                           compose(m_pullback_map(f, h_push_iso(f, x)), h_pull_iso(f, pushforward(f, x))));
    MatrixMap r2 = cardinality_map(unit_map(f, x));
    return r1 == r2;
}

bool check_h_counit(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    Family y = rand_family(rng, f.cod);
    MatrixObject hy = cardinality(y);
    MatrixMap r1 = m_counit_map(f, hy);
    MatrixMap r2 = compose(m_pushforward_map(f, h_pull_iso(f, y)),
                           compose(h_push_iso(f, pullback(f, y)), cardinality_map(counit_map(f, y))));
    return r1 == r2;
}

bool check_h_bc(Rng& rng) {
    for (;;) {
        BaseObject B = random_base(rng, 3), C = random_base(rng, 3), D = random_base(rng, 2);
        BaseMap g0 = random_map(rng, B, D), k0 = random_map(rng, C, D);
        std::vector<Elem> elems;
        std::map<Elem, Elem> fa, ha;
        for (const auto& b : B.elems)
            for (const auto& c : C.elems)
                if (g0(b) == k0(c)) {
                    Elem e = Elem::pair(b, c);
                    elems.push_back(e);
                    fa[e] = b;
                    ha[e] = c;
                }
        if (elems.empty()) continue;
        BaseObject A(elems);
        LabeledProductMap f = lift1(0, 0, BaseMap(A, B, fa)), h = lift1(0, 0, BaseMap(A, C, ha));
        LabeledProductMap g = lift1(0, 0, g0), k = lift1(0, 0, k0);
        Family z = rand_family(rng, h.cod);
        MatrixObject hz = cardinality(z);
        MatrixMap r1 = compose(m_beck_chevalley_iso(f, h, g, k, hz),
                               compose(m_pullback_map(g, h_push_iso(k, z)), h_pull_iso(g, pushforward(k, z))));
        MatrixMap r2 = compose(m_pushforward_map(f, h_pull_iso(h, z)),
                               compose(h_push_iso(f, pullback(h, z)),
                                       cardinality_map(beck_chevalley_iso(f, h, g, k, z))));
        return r1 == r2;
    }
}

bool check_h_tensor_tensor(Rng& rng) {
    std::map<int, int> sigma{{0, 0}, {1, 0}, {2, 1}};
    std::map<int, int> tau{{0, 0}, {1, 0}};
    std::vector<int> mid{0, 1}, cod{0};
    std::map<int, int> total{{0, 0}, {1, 0}, {2, 0}};
    std::map<int, Family> xs;
    std::map<int, MatrixObject> hs;
    for (int u = 0; u < 3; ++u) {
        xs[u] = rand_family(rng, LabeledProduct::single(u, random_base(rng, 2)), 2, u);
        hs[u] = cardinality(xs.at(u));
    }
    std::map<int, Family> mids = tensor_along(sigma, mid, xs);
    auto hmid = h_tensor_iso(sigma, mid, xs);
    std::map<int, MatrixMap> hmid_maps;
    for (int v : mid) hmid_maps.emplace(v, hmid.at(v));
    MatrixMap r1 = compose(m_iso_tensor_tensor(sigma, mid, tau, cod, hs).at(0),
                           compose(m_tensor_along_map(tau, cod, hmid_maps).at(0),
                                   h_tensor_iso(tau, cod, mids).at(0)));
    MatrixMap r2 = compose(h_tensor_iso(total, cod, xs).at(0),
                           cardinality_map(iso_tensor_tensor(sigma, mid, tau, cod, xs).at(0)));
    return r1 == r2;
}

bool check_h_tensor_pull(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift1(1, 1, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    Family z = rand_family(rng, f.cod, 2, 1);
    Family w = rand_family(rng, g.cod, 2, 2);
    LabeledProductMap fg = lp_union_map(f, g);
    MatrixMap r1 = compose(m_iso_tensor_pull(f, g, cardinality(z), cardinality(w)),
                           compose(m_pullback_map(fg, h_extern_iso(z, w)),
                                   h_pull_iso(fg, extern_product(z, w))));
    MatrixMap r2 = compose(m_extern_map(h_pull_iso(f, z), h_pull_iso(g, w)),
                           compose(h_extern_iso(pullback(f, z), pullback(g, w)),
                                   cardinality_map(iso_tensor_pull(f, g, z, w))));
    return r1 == r2;
}

bool check_h_tensor_push(Rng& rng) {
    LabeledProductMap f = lift1(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift1(1, 1, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    Family x = rand_family(rng, f.dom, 2, 1);
    Family y = rand_family(rng, g.dom, 2, 2);
    LabeledProductMap fg = lp_union_map(f, g);
    Family xy = extern_product(x, y);
    MatrixMap r1 = compose(m_pushforward_map(fg, h_extern_iso(x, y)),
                           compose(h_push_iso(fg, xy), cardinality_map(iso_tensor_push(f, g, x, y))));
    MatrixMap r2 = compose(m_iso_tensor_push(f, g, cardinality(x), cardinality(y)),
                           compose(m_extern_map(h_push_iso(f, x), h_push_iso(g, y)),
                                   h_extern_iso(pushforward(f, x), pushforward(g, y))));
    return r1 == r2;
}

}  // namespace

std::vector<std::string> h_kinds() { return {"H**", "H!!", "Hu", "Hc", "H*!", "Hxx", "Hx*", "Hx!"}; }

SuiteResult h_suite(const std::string& kind, std::uint64_t seed, int instances) {
    SuiteResult r;
    r.name = kind;
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        bool ok = false;
        try {
            if (kind == "H**") ok = check_h_pull_pull(rng);
            else if (kind == "H!!") ok = check_h_push_push(rng);
            else if (kind == "Hu") ok = check_h_unit(rng);
            else if (kind == "Hc") ok = check_h_counit(rng);
            else if (kind == "H*!") ok = check_h_bc(rng);
            else if (kind == "Hxx") ok = check_h_tensor_tensor(rng);
            else if (kind == "Hx*") ok = check_h_tensor_pull(rng);
            else if (kind == "Hx!") ok = check_h_tensor_push(rng);
            else throw ShapeMismatch("unknown cardinality coherence kind " + kind);
        } catch (const Error& e) {
            ok = false;
            if (r.witnesses.size() < 3) r.witnesses.push_back(e.what());
        }
        ++r.instances;
        if (!ok) {
            ++r.failures;
            if (r.witnesses.size() < 3) r.witnesses.push_back(kind + " instance " + std::to_string(i));
        }
    }
    return r;
}

}  // namespace shadowcalc
