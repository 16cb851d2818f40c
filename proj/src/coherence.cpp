#include "shadowcalc/coherence.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace shadowcalc {

namespace {

LabeledProduct sb(IndexId i, const BaseObject& a) { return LabeledProduct::single(i, a); }

LabeledProductMap lift(IndexId di, IndexId ci, const BaseMap& f) {
    return LabeledProductMap(sb(di, f.dom), sb(ci, f.cod), {{ci, di}}, {{ci, f}});
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

struct Sq {
    LabeledProductMap f, h, g, k;  // f: A->B, h: A->C, g: B->D, k: C->D
};

// A = B x_D C with the projections; always a pullback square.
Sq random_pullback_square(Rng& rng, IndexId idx = 0) {
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
        return Sq{lift(idx, idx, BaseMap(A, B, fa)), lift(idx, idx, BaseMap(A, C, ha)),
                  lift(idx, idx, g0), lift(idx, idx, k0)};
    }
}

// Commuting but generally not a pullback: post-compose a random map into the
// fiber product corner.
Sq random_commuting_square(Rng& rng, IndexId idx = 0) {
    Sq pb = random_pullback_square(rng, idx);
    BaseObject A2 = random_base(rng, 4);
    BaseMap phi = random_map(rng, A2, pb.f.dom.factors.at(idx));
    return Sq{compose(lift(idx, idx, phi), pb.f), compose(lift(idx, idx, phi), pb.h), pb.g, pb.k};
}


// per-backend operation bundles so every coherence check runs on both the
// family and the integer-matrix instance
struct FamOps {
    using Obj = Family;
    using Map = FamilyMap;
    static Obj rand(Rng& rng, const LabeledProduct& base, int mx = 2, int salt = 0) {
        return rand_family(rng, base, mx, salt);
    }
    static Map id(const Obj& x) { return FamilyMap::identity(x); }
    static Obj pull(const LabeledProductMap& f, const Obj& y) { return pullback(f, y); }
    static Obj push(const LabeledProductMap& f, const Obj& x) { return pushforward(f, x); }
    static Obj ext(const Obj& x, const Obj& y) { return extern_product(x, y); }
    static Map pull_map(const LabeledProductMap& f, const Map& m) { return pullback_map(f, m); }
    static Map push_map(const LabeledProductMap& f, const Map& m) { return pushforward_map(f, m); }
    static Map ext_map(const Map& m, const Map& n) { return extern_map(m, n); }
    static Map comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x) {
        return iso_comp_pull(f, g, x);
    }
    static Map comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x) {
        return iso_comp_push(f, g, x);
    }
    static Map bc_map(const LabeledProductMap& f, const LabeledProductMap& h, const LabeledProductMap& g,
                      const LabeledProductMap& k, const Obj& z) {
        return beck_chevalley_map(f, h, g, k, z);
    }
    static Map bc_iso(const LabeledProductMap& f, const LabeledProductMap& h, const LabeledProductMap& g,
                      const LabeledProductMap& k, const Obj& z) {
        return beck_chevalley_iso(f, h, g, k, z);
    }
    static Map unit(const LabeledProductMap& f, const Obj& x) { return unit_map(f, x); }
    static Map counit(const LabeledProductMap& f, const Obj& y) { return counit_map(f, y); }
    static Map t_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x, const Obj& y) {
        return iso_tensor_pull(f, g, x, y);
    }
    static Map t_push(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x, const Obj& y) {
        return iso_tensor_push(f, g, x, y);
    }
    static std::map<int, Obj> tensor(const std::map<int, int>& s, const std::vector<int>& c,
                                     const std::map<int, Obj>& xs) {
        return tensor_along(s, c, xs);
    }
    static std::map<int, Map> tensor_map(const std::map<int, int>& s, const std::vector<int>& c,
                                         const std::map<int, Map>& ms) {
        return tensor_along_map(s, c, ms);
    }
    static std::map<int, Map> t_tt(const std::map<int, int>& s, const std::vector<int>& mid,
                                   const std::map<int, int>& t, const std::vector<int>& c,
                                   const std::map<int, Obj>& xs) {
        return iso_tensor_tensor(s, mid, t, c, xs);
    }
    static std::map<int, Map> t_pull_n(const std::map<int, int>& s, const std::vector<int>& c,
                                       const std::map<int, LabeledProductMap>& fs,
                                       const std::map<int, Obj>& ys) {
        return iso_tensor_pull_n(s, c, fs, ys);
    }
    static std::map<int, Map> t_push_n(const std::map<int, int>& s, const std::vector<int>& c,
                                       const std::map<int, LabeledProductMap>& fs,
                                       const std::map<int, Obj>& xs) {
        return iso_tensor_push_n(s, c, fs, xs);
    }
};

struct MatOps {
    using Obj = MatrixObject;
    using Map = MatrixMap;
    static Obj rand(Rng& rng, const LabeledProduct& base, int mx = 3, int salt = 0) {
        (void)salt;
        Obj x;
        x.base = base;
        for (const auto& t : base.tuples()) x.rank[tuple_elem(t)] = rng.pick(0, mx);
        return x;
    }
    static Map id(const Obj& x) { return MatrixMap::identity(x); }
    static Obj pull(const LabeledProductMap& f, const Obj& y) { return m_pullback(f, y); }
    static Obj push(const LabeledProductMap& f, const Obj& x) { return m_pushforward(f, x); }
    static Obj ext(const Obj& x, const Obj& y) { return m_extern(x, y); }
    static Map pull_map(const LabeledProductMap& f, const Map& m) { return m_pullback_map(f, m); }
    static Map push_map(const LabeledProductMap& f, const Map& m) { return m_pushforward_map(f, m); }
    static Map ext_map(const Map& m, const Map& n) { return m_extern_map(m, n); }
    static Map comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x) {
        return m_iso_comp_pull(f, g, x);
    }
    static Map comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x) {
        return m_iso_comp_push(f, g, x);
    }
    static Map bc_map(const LabeledProductMap& f, const LabeledProductMap& h, const LabeledProductMap& g,
                      const LabeledProductMap& k, const Obj& z) {
        return m_beck_chevalley_map(f, h, g, k, z);
    }
    static Map bc_iso(const LabeledProductMap& f, const LabeledProductMap& h, const LabeledProductMap& g,
                      const LabeledProductMap& k, const Obj& z) {
        return m_beck_chevalley_iso(f, h, g, k, z);
    }
    static Map unit(const LabeledProductMap& f, const Obj& x) { return m_unit_map(f, x); }
    static Map counit(const LabeledProductMap& f, const Obj& y) { return m_counit_map(f, y); }
    static Map t_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x, const Obj& y) {
        return m_iso_tensor_pull(f, g, x, y);
    }
    static Map t_push(const LabeledProductMap& f, const LabeledProductMap& g, const Obj& x, const Obj& y) {
        return m_iso_tensor_push(f, g, x, y);
    }
    static std::map<int, Obj> tensor(const std::map<int, int>& s, const std::vector<int>& c,
                                     const std::map<int, Obj>& xs) {
        return m_tensor_along(s, c, xs);
    }
    static std::map<int, Map> tensor_map(const std::map<int, int>& s, const std::vector<int>& c,
                                         const std::map<int, Map>& ms) {
        return m_tensor_along_map(s, c, ms);
    }
    static std::map<int, Map> t_tt(const std::map<int, int>& s, const std::vector<int>& mid,
                                   const std::map<int, int>& t, const std::vector<int>& c,
                                   const std::map<int, Obj>& xs) {
        return m_iso_tensor_tensor(s, mid, t, c, xs);
    }
    static std::map<int, Map> t_pull_n(const std::map<int, int>& s, const std::vector<int>& c,
                                       const std::map<int, LabeledProductMap>& fs,
                                       const std::map<int, Obj>& ys) {
        return m_iso_tensor_pull_n(s, c, fs, ys);
    }
    static std::map<int, Map> t_push_n(const std::map<int, int>& s, const std::vector<int>& c,
                                       const std::map<int, LabeledProductMap>& fs,
                                       const std::map<int, Obj>& xs) {
        return m_iso_tensor_push_n(s, c, fs, xs);
    }
};

// ---- cubes ----

struct Cube {
    std::array<BaseObject, 8> obj;                // by corner mask
    std::map<std::pair<int, int>, BaseMap> edge;  // (mask, dir): obj[mask] -> obj[mask | 1<<dir]
    LabeledProductMap lifted(int mask, int dir) const { return lift(0, 0, edge.at({mask, dir})); }
};

// fully random commuting cube, built corner by corner through colimits
Cube random_commuting_cube(Rng& rng) {
    Cube c;
    c.obj[0] = random_base(rng, 3);
    for (int i = 0; i < 3; ++i) {
        c.obj[static_cast<std::size_t>(1 << i)] = random_base(rng, 4);
        c.edge[{0, i}] = random_map(rng, c.obj[0], c.obj[static_cast<std::size_t>(1 << i)]);
    }
    auto fresh_classes = [&](const std::vector<std::pair<int, const BaseObject*>>& parts,
                             auto&& relations) {
        std::map<Elem, Elem> parent;
        std::function<Elem(Elem)> find = [&](Elem x) {
            auto it = parent.find(x);
            if (it == parent.end() || it->second == x) {
                parent[x] = x;
                return x;
            }
            auto r = find(it->second);
            parent[x] = r;
            return r;
        };
        auto unite = [&](Elem a, Elem b) {
            a = find(a);
            b = find(b);
            if (!(a == b)) parent[a] = b;
        };
        for (const auto& [m, obj] : parts)
            for (const auto& e : obj->elems) find(Elem::pair(Elem::atom(m), e));
        relations(unite);
        std::map<Elem, Elem> resolved;
        for (const auto& [m, obj] : parts)
            for (const auto& e : obj->elems) {
                Elem tagged = Elem::pair(Elem::atom(m), e);
                resolved[tagged] = find(tagged);
            }
        return resolved;
    };
    auto random_cocone = [&](const std::map<Elem, Elem>& cls,
                             const std::vector<std::pair<int, const BaseObject*>>& parts,
                             const BaseObject& T) {
        std::map<Elem, Elem> cls_to_t;
        Rng inner(rng.raw());
        std::map<int, std::map<Elem, Elem>> maps;
        for (const auto& [m, obj] : parts)
            for (const auto& e : obj->elems) {
                Elem root = cls.at(Elem::pair(Elem::atom(m), e));
                auto it = cls_to_t.find(root);
                if (it == cls_to_t.end())
                    it = cls_to_t
                             .emplace(root, T.elems[static_cast<std::size_t>(
                                                inner.pick(0, static_cast<int>(T.size()) - 1))])
                             .first;
                maps[m][e] = it->second;
            }
        return maps;
    };
    for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
        int mi = 1 << i, mj = 1 << j;
        std::vector<std::pair<int, const BaseObject*>> parts{
            {mi, &c.obj[static_cast<std::size_t>(mi)]}, {mj, &c.obj[static_cast<std::size_t>(mj)]}};
        auto cls = fresh_classes(parts, [&](auto&& unite) {
            for (const auto& e : c.obj[0].elems)
                unite(Elem::pair(Elem::atom(mi), c.edge.at({0, i})(e)),
                      Elem::pair(Elem::atom(mj), c.edge.at({0, j})(e)));
        });
        BaseObject T = random_base(rng, 3);
        auto maps = random_cocone(cls, parts, T);
        c.obj[static_cast<std::size_t>(mi | mj)] = T;
        c.edge[{mi, j}] = BaseMap(c.obj[static_cast<std::size_t>(mi)], T, maps.at(mi));
        c.edge[{mj, i}] = BaseMap(c.obj[static_cast<std::size_t>(mj)], T, maps.at(mj));
    }
    {
        std::vector<std::pair<int, const BaseObject*>> parts{
            {3, &c.obj[3]}, {5, &c.obj[5]}, {6, &c.obj[6]}};
        auto cls = fresh_classes(parts, [&](auto&& unite) {
            for (int i = 0; i < 3; ++i) {
                int mi = 1 << i;
                std::vector<std::pair<int, int>> cofaces;
                for (int j = 0; j < 3; ++j)
                    if (j != i) cofaces.push_back({mi | (1 << j), j});
                for (const auto& e : c.obj[static_cast<std::size_t>(mi)].elems)
                    unite(Elem::pair(Elem::atom(cofaces[0].first),
                                     c.edge.at({mi, cofaces[0].second})(e)),
                          Elem::pair(Elem::atom(cofaces[1].first),
                                     c.edge.at({mi, cofaces[1].second})(e)));
            }
        });
        BaseObject T = random_base(rng, 3);
        auto maps = random_cocone(cls, parts, T);
        c.obj[7] = T;
        c.edge[{3, 2}] = BaseMap(c.obj[3], T, maps.at(3));
        c.edge[{5, 1}] = BaseMap(c.obj[5], T, maps.at(5));
        c.edge[{6, 0}] = BaseMap(c.obj[6], T, maps.at(6));
    }
    return c;
}

// cube whose four faces along direction 2 are pullbacks: the bottom square is
// the fiber product of the top square along a map into its far corner
Cube random_bc_cube(Rng& rng) {
    Cube c;
    Sq top = random_commuting_square(rng);
    c.obj[4] = top.f.dom.factors.at(0);
    c.obj[5] = top.f.cod.factors.at(0);
    c.obj[6] = top.h.cod.factors.at(0);
    c.obj[7] = top.g.cod.factors.at(0);
    c.edge[{4, 0}] = top.f.component.at(0);
    c.edge[{4, 1}] = top.h.component.at(0);
    c.edge[{5, 1}] = top.g.component.at(0);
    c.edge[{6, 0}] = top.k.component.at(0);
    BaseObject X12 = random_base(rng, 4);
    BaseMap phi = random_map(rng, X12, c.obj[7]);
    c.obj[3] = X12;
    c.edge[{3, 2}] = phi;
    auto fiber = [&](const BaseObject& t, const BaseMap& to7) {
        std::vector<Elem> elems;
        std::map<Elem, Elem> to_x, to_t;
        for (const auto& x : X12.elems)
            for (const auto& te : t.elems)
                if (phi(x) == to7(te)) {
                    Elem e = Elem::pair(x, te);
                    elems.push_back(e);
                    to_x[e] = x;
                    to_t[e] = te;
                }
        return std::tuple<BaseObject, std::map<Elem, Elem>, std::map<Elem, Elem>>{BaseObject(elems),
                                                                                  to_x, to_t};
    };
    BaseMap five_to_7 = c.edge.at({5, 1});
    BaseMap six_to_7 = c.edge.at({6, 0});
    BaseMap four_to_7 = compose(c.edge.at({4, 0}), five_to_7);
    auto [o1, x1, t1] = fiber(c.obj[5], five_to_7);
    auto [o2, x2, t2] = fiber(c.obj[6], six_to_7);
    auto [o0, x0, t0] = fiber(c.obj[4], four_to_7);
    c.obj[1] = o1;
    c.obj[2] = o2;
    c.obj[0] = o0;
    c.edge[{1, 2}] = BaseMap(o1, c.obj[5], t1);
    c.edge[{2, 2}] = BaseMap(o2, c.obj[6], t2);
    c.edge[{0, 2}] = BaseMap(o0, c.obj[4], t0);
    auto induce = [&](const BaseObject& src, const std::map<Elem, Elem>& to_x,
                      const std::map<Elem, Elem>& to_t, const BaseMap& top_edge, const BaseObject& dst) {
        std::map<Elem, Elem> mp;
        for (const auto& e : src.elems) mp[e] = Elem::pair(to_x.at(e), top_edge(to_t.at(e)));
        return BaseMap(src, dst, mp);
    };
    c.edge[{0, 0}] = induce(o0, x0, t0, c.edge.at({4, 0}), o1);
    c.edge[{0, 1}] = induce(o0, x0, t0, c.edge.at({4, 1}), o2);
    std::map<Elem, Elem> m1, m2;
    for (const auto& e : o1.elems) m1[e] = x1.at(e);
    for (const auto& e : o2.elems) m2[e] = x2.at(e);
    c.edge[{1, 1}] = BaseMap(o1, X12, m1);
    c.edge[{2, 0}] = BaseMap(o2, X12, m2);
    return c;
}

// Hexagon of face swaps around a cube with the given flip pattern (true is a
// pushforward direction); composes to the identity when the cube is coherent.
template <class O>
bool cube_hexagon(const Cube& cube, std::array<bool, 3> flips, Rng& rng) {
    using Map = typename O::Map;
    typename O::Obj start = O::rand(rng, sb(0, cube.obj[static_cast<std::size_t>(
                                                   [&] {
                                                       int s = 0;
                                                       for (int i = 0; i < 3; ++i)
                                                           if (!flips[static_cast<std::size_t>(i)]) s |= 1 << i;
                                                       return s;
                                                   }())]));
    int source = 0;
    for (int i = 0; i < 3; ++i)
        if (!flips[static_cast<std::size_t>(i)]) source |= 1 << i;

    auto apply_op = [&](int& corner, int dir, const typename O::Obj& w) {
        if (flips[static_cast<std::size_t>(dir)]) {
            LabeledProductMap f = cube.lifted(corner, dir);
            corner |= 1 << dir;
            return O::push(f, w);
        }
        corner &= ~(1 << dir);
        return O::pull(cube.lifted(corner, dir), w);
    };
    auto route_value = [&](std::array<int, 3> order) {
        int corner = source;
        typename O::Obj w = start;
        for (int dir : order) w = apply_op(corner, dir, w);
        return w;
    };

    auto pair_swap = [&](int T, int i, int j, const typename O::Obj& w) -> Map {
        bool pi = flips[static_cast<std::size_t>(i)], pj = flips[static_cast<std::size_t>(j)];
        if (!pi && !pj) {
            LabeledProductMap f1 = cube.lifted(T & ~(1 << i), i);
            LabeledProductMap f2 = cube.lifted(T & ~(1 << i) & ~(1 << j), j);
            LabeledProductMap g1 = cube.lifted(T & ~(1 << j), j);
            LabeledProductMap g2 = cube.lifted(T & ~(1 << i) & ~(1 << j), i);
            return compose(O::comp_pull(f2, f1, w).inverse(), O::comp_pull(g2, g1, w));
        }
        if (pi && pj) {
            LabeledProductMap k1 = cube.lifted(T, i);
            LabeledProductMap k2 = cube.lifted(T | (1 << i), j);
            LabeledProductMap l1 = cube.lifted(T, j);
            LabeledProductMap l2 = cube.lifted(T | (1 << j), i);
            return compose(O::comp_push(k1, k2, w).inverse(), O::comp_push(l1, l2, w));
        }
        if (!pi && pj) {
            LabeledProductMap h = cube.lifted(T & ~(1 << i), i);
            LabeledProductMap f = cube.lifted(T & ~(1 << i), j);
            LabeledProductMap k = cube.lifted(T, j);
            LabeledProductMap g = cube.lifted((T | (1 << j)) & ~(1 << i), i);
            return O::bc_iso(f, h, g, k, w);
        }
        LabeledProductMap k = cube.lifted(T, i);
        LabeledProductMap g = cube.lifted((T | (1 << i)) & ~(1 << j), j);
        LabeledProductMap h = cube.lifted(T & ~(1 << j), j);
        LabeledProductMap f = cube.lifted(T & ~(1 << j), i);
        return O::bc_iso(f, h, g, k, w).inverse();
    };

    auto swap_iso = [&](std::array<int, 3> order, int p) -> Map {
        int corner = source;
        typename O::Obj w = start;
        for (int q = 0; q < p; ++q) w = apply_op(corner, order[static_cast<std::size_t>(q)], w);
        Map iso = pair_swap(corner, order[static_cast<std::size_t>(p)],
                            order[static_cast<std::size_t>(p) + 1], w);
        if (p == 0) {
            int dir = order[2];
            int c2 = corner;
            for (int q = 0; q < 2; ++q) {
                int d = order[static_cast<std::size_t>(q)];
                c2 = flips[static_cast<std::size_t>(d)] ? (c2 | (1 << d)) : (c2 & ~(1 << d));
            }
            if (flips[static_cast<std::size_t>(dir)])
                iso = O::push_map(cube.lifted(c2, dir), iso);
            else
                iso = O::pull_map(cube.lifted(c2 & ~(1 << dir), dir), iso);
        }
        return iso;
    };

    std::array<int, 3> order{0, 1, 2};
    typename O::Obj v0 = route_value(order);
    Map total = O::id(v0);
    for (int step = 0; step < 6; ++step) {
        int p = step % 2 == 0 ? 0 : 1;
        Map s = swap_iso(order, p);
        total = compose(total, s);
        std::swap(order[static_cast<std::size_t>(p)], order[static_cast<std::size_t>(p) + 1]);
    }
    return total == O::id(v0);
}

// ---- prism coherences over one Beck-Chevalley square ----

template <class O>
bool check_u_push(const Sq& s, const typename O::Obj& z) {
    auto r1 = compose(O::unit(s.k, O::push(s.h, z)),
                      O::pull_map(s.k, compose(O::comp_push(s.h, s.k, z).inverse(),
                                               O::comp_push(s.f, s.g, z))));
    auto r2 = compose(O::push_map(s.h, O::unit(s.f, z)),
                      O::bc_map(s.h, s.f, s.k, s.g, O::push(s.f, z)));
    return r1 == r2;
}

template <class O>
bool check_c_push(const Sq& s, const typename O::Obj& y) {
    auto fy = O::pull(s.f, y);
    auto r1 = O::push_map(s.g, O::counit(s.f, y));
    auto r2 = compose(compose(O::comp_push(s.f, s.g, fy).inverse(), O::comp_push(s.h, s.k, fy)),
                      compose(O::push_map(s.k, O::bc_map(s.h, s.f, s.k, s.g, y)),
                              O::counit(s.k, O::push(s.g, y))));
    return r1 == r2;
}

template <class O>
bool check_u_pull(const Sq& s, const typename O::Obj& z) {
    auto kz = O::push(s.k, z);
    auto r1 = O::pull_map(s.h, O::unit(s.k, z));
    auto r2 = compose(O::unit(s.f, O::pull(s.h, z)),
                      compose(O::pull_map(s.f, O::bc_map(s.f, s.h, s.g, s.k, z)),
                              compose(O::comp_pull(s.f, s.g, kz).inverse(), O::comp_pull(s.h, s.k, kz))));
    return r1 == r2;
}

template <class O>
bool check_c_pull(const Sq& s, const typename O::Obj& w) {
    auto r1 = compose(O::push_map(s.f, compose(O::comp_pull(s.h, s.k, w).inverse(),
                                               O::comp_pull(s.f, s.g, w))),
                      O::counit(s.f, O::pull(s.g, w)));
    auto r2 = compose(O::bc_map(s.f, s.h, s.g, s.k, O::pull(s.k, w)),
                      O::pull_map(s.g, O::counit(s.k, w)));
    return r1 == r2;
}

// ---- external product coherences ----

template <class O>
bool check_u_tensor(Rng& rng) {
    LabeledProductMap f = lift(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift(1, 1, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    typename O::Obj x = O::rand(rng, f.dom, 2, 1);
    typename O::Obj y = O::rand(rng, g.dom, 2, 2);
    LabeledProductMap fg = lp_union_map(f, g);
    auto r1 = O::unit(fg, O::ext(x, y));
    auto r2 = compose(O::ext_map(O::unit(f, x), O::unit(g, y)),
                           compose(O::t_pull(f, g, O::push(f, x), O::push(g, y)),
                                   O::pull_map(fg, O::t_push(f, g, x, y).inverse())));
    return r1 == r2;
}

template <class O>
bool check_c_tensor(Rng& rng) {
    LabeledProductMap f = lift(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g = lift(1, 1, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    typename O::Obj z = O::rand(rng, f.cod, 2, 1);
    typename O::Obj w = O::rand(rng, g.cod, 2, 2);
    LabeledProductMap fg = lp_union_map(f, g);
    typename O::Obj zw = O::ext(z, w);
    auto r1 = O::counit(fg, zw);
    auto r2 = compose(O::push_map(fg, O::t_pull(f, g, z, w).inverse()),
                           compose(O::t_push(f, g, O::pull(f, z), O::pull(g, w)),
                                   O::ext_map(O::counit(f, z), O::counit(g, w))));
    return r1 == r2;
}

template <class O>
bool check_pull_pull_tensor(Rng& rng) {
    BaseObject A = random_base(rng, 3), Bm = random_base(rng, 3), C = random_base(rng, 3);
    BaseObject A2 = random_base(rng, 3), B2 = random_base(rng, 3), C2 = random_base(rng, 3);
    LabeledProductMap f1 = lift(0, 0, random_map(rng, A, Bm)), g1 = lift(0, 0, random_map(rng, Bm, C));
    LabeledProductMap f2 = lift(1, 1, random_map(rng, A2, B2)), g2 = lift(1, 1, random_map(rng, B2, C2));
    typename O::Obj z = O::rand(rng, g1.cod, 2, 1);
    typename O::Obj w = O::rand(rng, g2.cod, 2, 2);
    typename O::Obj zw = O::ext(z, w);
    auto r1 = compose(O::t_pull(compose(f1, g1), compose(f2, g2), z, w).inverse(),
                           O::ext_map(O::comp_pull(f1, g1, z), O::comp_pull(f2, g2, w)));
    auto r2 =
        compose(O::comp_pull(lp_union_map(f1, f2), lp_union_map(g1, g2), zw),
                compose(O::pull_map(lp_union_map(f1, f2), O::t_pull(g1, g2, z, w).inverse()),
                        O::t_pull(f1, f2, O::pull(g1, z), O::pull(g2, w)).inverse()));
    return r1 == r2;
}

template <class O>
bool check_push_push_tensor(Rng& rng) {
    LabeledProductMap f1 = lift(0, 0, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g1 = lift(0, 0, random_map(rng, f1.cod.factors.at(0), random_base(rng, 3)));
    LabeledProductMap f2 = lift(1, 1, random_map(rng, random_base(rng, 3), random_base(rng, 3)));
    LabeledProductMap g2 = lift(1, 1, random_map(rng, f2.cod.factors.at(1), random_base(rng, 3)));
    typename O::Obj x = O::rand(rng, f1.dom, 2, 1);
    typename O::Obj y = O::rand(rng, f2.dom, 2, 2);
    typename O::Obj xy = O::ext(x, y);
    auto r1 = compose(O::comp_push(lp_union_map(f1, f2), lp_union_map(g1, g2), xy).inverse(),
                           compose(O::t_push(compose(f1, g1), compose(f2, g2), x, y),
                                   O::ext_map(O::comp_push(f1, g1, x), O::comp_push(f2, g2, y))));
    auto r2 = compose(O::push_map(lp_union_map(g1, g2), O::t_push(f1, f2, x, y)),
                           O::t_push(g1, g2, O::push(f1, x), O::push(f2, y)));
    return r1 == r2;
}

template <class O>
bool check_bc_tensor(Rng& rng) {
    Sq s1 = random_pullback_square(rng, 0);
    Sq s2 = random_pullback_square(rng, 1);
    typename O::Obj z = O::rand(rng, s1.h.cod, 2, 1);
    typename O::Obj w = O::rand(rng, s2.h.cod, 2, 2);
    typename O::Obj zw = O::ext(z, w);
    LabeledProductMap F = lp_union_map(s1.f, s2.f), H = lp_union_map(s1.h, s2.h);
    LabeledProductMap G = lp_union_map(s1.g, s2.g), K = lp_union_map(s1.k, s2.k);
    auto r1 = O::bc_iso(F, H, G, K, zw);
    auto r2 = compose(
        O::push_map(F, O::t_pull(s1.h, s2.h, z, w).inverse()),
        compose(O::t_push(s1.f, s2.f, O::pull(s1.h, z), O::pull(s2.h, w)),
                compose(O::ext_map(O::bc_iso(s1.f, s1.h, s1.g, s1.k, z),
                                   O::bc_iso(s2.f, s2.h, s2.g, s2.k, w)),
                        compose(O::t_pull(s1.g, s2.g, O::push(s1.k, z), O::push(s2.k, w)),
                                O::pull_map(G, O::t_push(s1.k, s2.k, z, w).inverse())))));
    return r1 == r2;
}

template <class O>
bool check_pull_tensor_tensor(Rng& rng) {
    std::map<int, int> sigma{{0, 0}, {1, 0}, {2, 1}};
    std::map<int, int> tau{{0, 0}, {1, 0}};
    std::vector<int> mid{0, 1}, cod{0};
    std::map<int, int> total{{0, 0}, {1, 0}, {2, 0}};
    std::map<int, LabeledProductMap> fs;
    std::map<int, typename O::Obj> zs;
    for (int u = 0; u < 3; ++u) {
        fs.emplace(u, lift(u, u, random_map(rng, random_base(rng, 2), random_base(rng, 2))));
        zs[u] = O::rand(rng, fs.at(u).cod, 2, u);
    }
    std::map<int, typename O::Obj> pulled;
    for (int u = 0; u < 3; ++u) pulled[u] = O::pull(fs.at(u), zs.at(u));
    LabeledProductMap joint = lp_union_map(lp_union_map(fs.at(0), fs.at(1)), fs.at(2));
    auto r1 = compose(O::t_pull_n(total, cod, fs, zs).at(0),
                           O::pull_map(joint, O::t_tt(sigma, mid, tau, cod, zs).at(0)));
    std::map<int, LabeledProductMap> mid_fs;
    mid_fs.emplace(0, lp_union_map(fs.at(0), fs.at(1)));
    mid_fs.emplace(1, fs.at(2));
    std::map<int, typename O::Obj> mid_zs = O::tensor(sigma, mid, zs);
    auto inner = O::t_pull_n(sigma, mid, fs, zs);
    std::map<int, typename O::Map> inner_maps;
    for (int v : mid) inner_maps.emplace(v, inner.at(v));
    auto r2 = compose(O::t_tt(sigma, mid, tau, cod, pulled).at(0),
                           compose(O::tensor_map(tau, cod, inner_maps).at(0),
                                   O::t_pull_n(tau, cod, mid_fs, mid_zs).at(0)));
    return r1 == r2;
}

template <class O>
bool check_push_tensor_tensor(Rng& rng) {
    std::map<int, int> sigma{{0, 0}, {1, 0}, {2, 1}};
    std::map<int, int> tau{{0, 0}, {1, 0}};
    std::vector<int> mid{0, 1}, cod{0};
    std::map<int, int> total{{0, 0}, {1, 0}, {2, 0}};
    std::map<int, LabeledProductMap> fs;
    std::map<int, typename O::Obj> xs;
    for (int u = 0; u < 3; ++u) {
        fs.emplace(u, lift(u, u, random_map(rng, random_base(rng, 2), random_base(rng, 2))));
        xs[u] = O::rand(rng, fs.at(u).dom, 2, u);
    }
    LabeledProductMap joint = lp_union_map(lp_union_map(fs.at(0), fs.at(1)), fs.at(2));
    std::map<int, typename O::Obj> pushed;
    for (int u = 0; u < 3; ++u) pushed[u] = O::push(fs.at(u), xs.at(u));
    auto r1 = compose(O::t_push_n(total, cod, fs, xs).at(0),
                           O::t_tt(sigma, mid, tau, cod, pushed).at(0));
    std::map<int, LabeledProductMap> mid_fs;
    mid_fs.emplace(0, lp_union_map(fs.at(0), fs.at(1)));
    mid_fs.emplace(1, fs.at(2));
    std::map<int, typename O::Obj> mid_xs = O::tensor(sigma, mid, xs);
    auto inner = O::t_push_n(sigma, mid, fs, xs);
    std::map<int, typename O::Map> inner_maps;
    for (int v : mid) inner_maps.emplace(v, inner.at(v));
    auto r2 = compose(O::push_map(joint, O::t_tt(sigma, mid, tau, cod, xs).at(0)),
                           compose(O::t_push_n(tau, cod, mid_fs, mid_xs).at(0),
                                   O::tensor_map(tau, cod, inner_maps).at(0)));
    return r1 == r2;
}

}  // namespace

std::vector<std::string> atomic_kinds() {
    return {"***", "**!", "*!!", "!!!", "u*", "u!", "c*", "c!",
            "**x", "!!x", "*!x", "ux", "cx", "*xx", "!xx"};
}

namespace {

template <class O>
bool atomic_instance(const std::string& kind, Rng& rng) {
    if (kind == "***") return cube_hexagon<O>(random_commuting_cube(rng), {false, false, false}, rng);
    if (kind == "!!!") return cube_hexagon<O>(random_commuting_cube(rng), {true, true, true}, rng);
    if (kind == "**!") return cube_hexagon<O>(random_bc_cube(rng), {false, false, true}, rng);
    if (kind == "*!!") return cube_hexagon<O>(random_bc_cube(rng), {true, true, false}, rng);
    if (kind == "u!") {
        Sq s = random_pullback_square(rng);
        return check_u_push<O>(s, O::rand(rng, s.f.dom));
    }
    if (kind == "c!") {
        Sq s = random_pullback_square(rng);
        return check_c_push<O>(s, O::rand(rng, s.f.cod));
    }
    if (kind == "u*") {
        Sq s = random_pullback_square(rng);
        return check_u_pull<O>(s, O::rand(rng, s.h.cod));
    }
    if (kind == "c*") {
        Sq s = random_pullback_square(rng);
        return check_c_pull<O>(s, O::rand(rng, s.g.cod));
    }
    if (kind == "ux") return check_u_tensor<O>(rng);
    if (kind == "cx") return check_c_tensor<O>(rng);
    if (kind == "**x") return check_pull_pull_tensor<O>(rng);
    if (kind == "!!x") return check_push_push_tensor<O>(rng);
    if (kind == "*!x") return check_bc_tensor<O>(rng);
    if (kind == "*xx") return check_pull_tensor_tensor<O>(rng);
    if (kind == "!xx") return check_push_tensor_tensor<O>(rng);
    throw ShapeMismatch("unknown atomic coherence kind " + kind);
}

}  // namespace

SuiteResult atomic_suite(const std::string& kind, std::uint64_t seed, int instances, bool matrix_backend) {
    SuiteResult r;
    r.name = kind;
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        bool ok = false;
        try {
            ok = matrix_backend ? atomic_instance<MatOps>(kind, rng) : atomic_instance<FamOps>(kind, rng);
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

SuiteResult pasting_suite(std::uint64_t seed, int instances) {
    SuiteResult r;
    r.name = "pasting";
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        Sq bottom = random_pullback_square(rng);
        BaseObject C2 = random_base(rng, 3);
        BaseMap k2 = random_map(rng, C2, bottom.h.cod.factors.at(0));
        std::vector<Elem> elems;
        std::map<Elem, Elem> fa, ha;
        for (const auto& a : bottom.f.dom.factors.at(0).elems)
            for (const auto& c : C2.elems)
                if (bottom.h.component.at(0)(a) == k2(c)) {
                    Elem e = Elem::pair(a, c);
                    elems.push_back(e);
                    fa[e] = a;
                    ha[e] = c;
                }
        if (elems.empty()) {
            --i;
            continue;
        }
        BaseObject A2(elems);
        LabeledProductMap f2 = lift(0, 0, BaseMap(A2, bottom.f.dom.factors.at(0), fa));
        LabeledProductMap h2 = lift(0, 0, BaseMap(A2, C2, ha));
        LabeledProductMap k2l = lift(0, 0, k2);
        Family z = rand_family(rng, h2.cod);
        Family hz = pullback(h2, z);
        FamilyMap big =
            beck_chevalley_map(compose(f2, bottom.f), h2, bottom.g, compose(k2l, bottom.k), z);
        FamilyMap small = compose(
            pushforward_map(bottom.f, beck_chevalley_map(f2, h2, bottom.h, k2l, z)),
            compose(beck_chevalley_map(bottom.f, bottom.h, bottom.g, bottom.k, pushforward(k2l, z)),
                    pullback_map(bottom.g, iso_comp_push(k2l, bottom.k, z).inverse())));
        FamilyMap lhs = compose(iso_comp_push(f2, bottom.f, hz), small);
        ++r.instances;
        if (!(big == lhs)) {
            ++r.failures;
            r.witnesses.push_back("pasting instance " + std::to_string(i));
        }
    }
    return r;
}

SuiteResult rearrangement_suite(std::uint64_t seed, int instances) {
    SuiteResult r;
    r.name = "rearrangement";
    Rng rng(seed);
    for (int i = 0; i < instances; ++i) {
        Sq s = random_commuting_square(rng);
        Family z = rand_family(rng, s.h.cod);
        Family hz = pullback(s.h, z);
        FamilyMap first = beck_chevalley_map(s.f, s.h, s.g, s.k, z);
        FamilyMap second =
            compose(unit_map(s.g, pushforward(s.f, hz)),
                    compose(pullback_map(s.g, compose(iso_comp_push(s.f, s.g, hz).inverse(),
                                                      iso_comp_push(s.h, s.k, hz))),
                            pullback_map(s.g, pushforward_map(s.k, counit_map(s.h, z)))));
        ++r.instances;
        if (!(first == second)) {
            ++r.failures;
            r.witnesses.push_back("rearrangement instance " + std::to_string(i));
        }
    }
    return r;
}

}  // namespace shadowcalc
