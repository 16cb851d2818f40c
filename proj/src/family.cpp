#include "shadowcalc/family.hpp"

#include <algorithm>
#include <set>

namespace shadowcalc {

void Family::insert(Elem key, std::map<IndexId, Elem> anchor) {
    if (!base.contains_tuple(anchor)) throw BaseMismatch("anchor outside the base product");
    if (!elems.emplace(std::move(key), std::move(anchor)).second)
        throw ShapeMismatch("duplicate family element");
}

std::vector<Elem> Family::fiber(const std::map<IndexId, Elem>& anchor) const {
    std::vector<Elem> out;
    for (const auto& [k, a] : elems)
        if (a == anchor) out.push_back(k);
    return out;
}

Family unit_family() {
    Family f;
    f.base = LabeledProduct::empty();
    f.insert(Elem::tuple({}), {});
    return f;
}

FamilyMap::FamilyMap(Family d, Family c, LabeledProductMap b, std::map<Elem, Elem> e)
    : dom(std::move(d)), cod(std::move(c)), base(std::move(b)), el(std::move(e)) {
    if (!(base.dom == dom.base) || !(base.cod == cod.base))
        throw BaseMismatch("family map base endpoints disagree");
    for (const auto& [k, a] : dom.elems) {
        auto it = el.find(k);
        if (it == el.end()) throw ShapeMismatch("family map not total");
        auto cit = cod.elems.find(it->second);
        if (cit == cod.elems.end()) throw ShapeMismatch("family map image outside codomain");
        if (!(cit->second == base.apply(a))) throw BaseMismatch("family map is not anchor compatible");
    }
    if (el.size() != dom.elems.size()) throw ShapeMismatch("family map defined outside its domain");
}

FamilyMap FamilyMap::identity(const Family& x) {
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : x.elems) e[k] = k;
    return FamilyMap(x, x, LabeledProductMap::identity(x.base), std::move(e));
}

bool FamilyMap::is_bijective() const {
    if (dom.size() != cod.size()) return false;
    std::set<Elem> img;
    for (const auto& [k, v] : el) img.insert(v);
    return img.size() == cod.size();
}

FamilyMap FamilyMap::inverse() const {
    if (!is_bijective()) throw ShapeMismatch("inverse of a non-bijective family map");
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& [u, t] : base.index_map) {
        if (idx.count(t)) throw ShapeMismatch("base map of bijection is not invertible");
        idx[t] = u;
    }
    for (const auto& [t, obj] : base.dom.factors) {
        if (!idx.count(t)) throw ShapeMismatch("base map of bijection is not invertible");
        comps.emplace(t, base.component.at(idx.at(t)).inverse());
    }
    LabeledProductMap inv_base(base.cod, base.dom, std::move(idx), std::move(comps));
    std::map<Elem, Elem> e;
    for (const auto& [k, v] : el) e[v] = k;
    return FamilyMap(cod, dom, std::move(inv_base), std::move(e));
}

FamilyMap compose(const FamilyMap& f, const FamilyMap& g) {
    if (!(f.cod == g.dom)) throw CompositionMismatch("family maps do not compose");
    std::map<Elem, Elem> e;
    for (const auto& [k, v] : f.el) e[k] = g.el.at(v);
    return FamilyMap(f.dom, g.cod, compose(f.base, g.base), std::move(e));
}

namespace {

// Key conventions shared by the operations and the canonical isomorphisms.
// Pullback along an identity is modeled as the strict identity.
Elem pull_key(const LabeledProductMap& f, const std::map<IndexId, Elem>& anchor, const Elem& ykey) {
    if (f.is_identity()) return ykey;
    return Elem::pair(tuple_elem(anchor), ykey);
}

Elem tensor_key(std::vector<Elem> parts) {
    if (parts.size() == 1) return parts[0];
    return Elem::tuple(std::move(parts));
}

}  // namespace

Family pullback(const LabeledProductMap& f, const Family& y) {
    if (!(f.cod == y.base)) throw BaseMismatch("pullback base mismatch");
    if (f.is_identity()) return y;
    Family out;
    out.base = f.dom;
    for (const auto& t : f.dom.tuples()) {
        auto image = f.apply(t);
        for (const auto& [k, a] : y.elems)
            if (a == image) out.insert(pull_key(f, t, k), t);
    }
    return out;
}

Family pushforward(const LabeledProductMap& f, const Family& x) {
    if (!(f.dom == x.base)) throw BaseMismatch("pushforward base mismatch");
    Family out;
    out.base = f.cod;
    for (const auto& [k, a] : x.elems) out.insert(k, f.apply(a));
    return out;
}

Family extern_product(const Family& x, const Family& y) {
    Family out;
    out.base = lp_union(x.base, y.base);
    for (const auto& [kx, ax] : x.elems)
        for (const auto& [ky, ay] : y.elems) {
            auto anchor = ax;
            anchor.insert(ay.begin(), ay.end());
            out.insert(Elem::pair(kx, ky), std::move(anchor));
        }
    return out;
}

Family tensor_fiberwise(const Family& x, const Family& y) {
    if (!(x.base == y.base)) throw BaseMismatch("fiberwise tensor base mismatch");
    Family out;
    out.base = x.base;
    for (const auto& [kx, ax] : x.elems)
        for (const auto& [ky, ay] : y.elems)
            if (ax == ay) out.insert(Elem::pair(kx, ky), ax);
    return out;
}

Family tensor_list(const std::vector<Family>& xs) {
    if (xs.empty()) return unit_family();
    if (xs.size() == 1) return xs[0];
    Family out;
    out.base = xs[0].base;
    for (std::size_t i = 1; i < xs.size(); ++i) out.base = lp_union(out.base, xs[i].base);
    // flat tuples, left-to-right
    std::vector<std::pair<Elem, std::map<IndexId, Elem>>> acc{{Elem::tuple({}), {}}};
    for (const auto& x : xs) {
        std::vector<std::pair<Elem, std::map<IndexId, Elem>>> next;
        for (const auto& [k, a] : acc)
            for (const auto& [kx, ax] : x.elems) {
                auto parts = k.parts();
                parts.push_back(kx);
                auto anchor = a;
                anchor.insert(ax.begin(), ax.end());
                next.push_back({Elem::tuple(std::move(parts)), std::move(anchor)});
            }
        acc = std::move(next);
    }
    for (auto& [k, a] : acc) out.insert(std::move(k), std::move(a));
    return out;
}

std::map<int, Family> tensor_along(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                   const std::map<int, Family>& xs) {
    std::map<int, Family> out;
    for (int v : cod) {
        std::vector<Family> fiber;
        for (const auto& [u, vv] : sigma)
            if (vv == v) fiber.push_back(xs.at(u));
        out[v] = tensor_list(fiber);
    }
    return out;
}

FamilyMap cartesian_arrow(const LabeledProductMap& f, const Family& y) {
    Family d = pullback(f, y);
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems) e[k] = f.is_identity() ? k : k.parts()[1];
    return FamilyMap(d, y, f, std::move(e));
}

FamilyMap cocartesian_arrow(const LabeledProductMap& f, const Family& x) {
    Family c = pushforward(f, x);
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : x.elems) e[k] = k;
    return FamilyMap(x, std::move(c), f, std::move(e));
}

bool is_cartesian(const FamilyMap& m) {
    for (const auto& t : m.dom.base.tuples()) {
        auto image = m.base.apply(t);
        std::vector<Elem> df = m.dom.fiber(t), cf = m.cod.fiber(image);
        if (df.size() != cf.size()) return false;
        std::set<Elem> hit;
        for (const auto& x : df) hit.insert(m.el.at(x));
        if (hit.size() != cf.size()) return false;
    }
    return true;
}

bool is_cocartesian(const FamilyMap& m) { return m.is_bijective(); }

FamilyMap pullback_map(const LabeledProductMap& f, const FamilyMap& m) {
    if (!m.is_vertical()) throw ShapeMismatch("pullback of a non-vertical map");
    Family d = pullback(f, m.dom);
    Family c = pullback(f, m.cod);
    std::map<Elem, Elem> e;
    if (f.is_identity()) return m;
    for (const auto& [k, a] : d.elems) e[k] = Elem::pair(k.parts()[0], m.el.at(k.parts()[1]));
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(f.dom), std::move(e));
}

FamilyMap pushforward_map(const LabeledProductMap& f, const FamilyMap& m) {
    if (!m.is_vertical()) throw ShapeMismatch("pushforward of a non-vertical map");
    Family d = pushforward(f, m.dom);
    Family c = pushforward(f, m.cod);
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(f.cod), m.el);
}

FamilyMap extern_map(const FamilyMap& m, const FamilyMap& n) {
    Family d = extern_product(m.dom, n.dom);
    Family c = extern_product(m.cod, n.cod);
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems)
        e[k] = Elem::pair(m.el.at(k.parts()[0]), n.el.at(k.parts()[1]));
    return FamilyMap(std::move(d), std::move(c), lp_union_map(m.base, n.base), std::move(e));
}

std::map<int, FamilyMap> tensor_along_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                          const std::map<int, FamilyMap>& ms) {
    std::map<int, FamilyMap> out;
    for (int v : cod) {
        std::vector<const FamilyMap*> fiber;
        for (const auto& [u, vv] : sigma)
            if (vv == v) fiber.push_back(&ms.at(u));
        if (fiber.empty()) {
            out.emplace(v, FamilyMap::identity(unit_family()));
            continue;
        }
        if (fiber.size() == 1) {
            out.emplace(v, *fiber[0]);
            continue;
        }
        std::vector<Family> doms, cods;
        for (const auto* m : fiber) {
            doms.push_back(m->dom);
            cods.push_back(m->cod);
        }
        Family d = tensor_list(doms), c = tensor_list(cods);
        std::map<Elem, Elem> e;
        LabeledProductMap b = fiber[0]->base;
        for (std::size_t i = 1; i < fiber.size(); ++i) b = lp_union_map(b, fiber[i]->base);
        for (const auto& [k, a] : d.elems) {
            std::vector<Elem> parts;
            for (std::size_t i = 0; i < fiber.size(); ++i) parts.push_back(fiber[i]->el.at(k.parts()[i]));
            e[k] = Elem::tuple(std::move(parts));
        }
        out.emplace(v, FamilyMap(std::move(d), std::move(c), std::move(b), std::move(e)));
    }
    return out;
}

Bijection iso_comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x) {
    LabeledProductMap fg = compose(f, g);
    Family d = pullback(fg, x);
    Family gy = pullback(g, x);
    Family c = pullback(f, gy);
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems) {
        // a is the anchor over dom(f); recover the middle anchor and x-element
        Elem xkey = fg.is_identity() ? k : k.parts()[1];
        auto mid = f.apply(a);
        e[k] = pull_key(f, a, pull_key(g, mid, xkey));
    }
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(f.dom), std::move(e));
}

Bijection iso_comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x) {
    Family d = pushforward(compose(f, g), x);
    Family c = pushforward(g, pushforward(f, x));
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems) e[k] = k;
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(g.cod), std::move(e));
}

FamilyMap beck_chevalley_map(const LabeledProductMap& f, const LabeledProductMap& h,
                             const LabeledProductMap& g, const LabeledProductMap& k, const Family& z) {
    if (!(compose(f, g) == compose(h, k))) throw NotCommuting("Beck-Chevalley square does not commute");
    Family hz = pullback(h, z);
    Family d = pushforward(f, hz);
    Family kz = pushforward(k, z);
    Family c = pullback(g, kz);
    std::map<Elem, Elem> e;
    for (const auto& [kx, a] : hz.elems) {
        Elem zkey = h.is_identity() ? kx : kx.parts()[1];
        e[kx] = pull_key(g, f.apply(a), zkey);
    }
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(f.cod), std::move(e));
}

Bijection beck_chevalley_iso(const LabeledProductMap& f, const LabeledProductMap& h,
                             const LabeledProductMap& g, const LabeledProductMap& k, const Family& z) {
    if (!is_beck_chevalley(f, h, g, k))
        throw NotBeckChevalley("cannot invert the Beck-Chevalley map of a non-Beck-Chevalley square");
    FamilyMap m = beck_chevalley_map(f, h, g, k, z);
    if (!m.is_bijective()) throw NotBeckChevalley("Beck-Chevalley map failed to invert");
    return m;
}

FamilyMap unit_map(const LabeledProductMap& f, const Family& x) {
    Family c = pullback(f, pushforward(f, x));
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : x.elems) e[k] = pull_key(f, a, k);
    return FamilyMap(x, std::move(c), LabeledProductMap::identity(f.dom), std::move(e));
}

FamilyMap counit_map(const LabeledProductMap& f, const Family& y) {
    Family fy = pullback(f, y);
    Family d = pushforward(f, fy);
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : fy.elems) e[k] = f.is_identity() ? k : k.parts()[1];
    return FamilyMap(std::move(d), y, LabeledProductMap::identity(f.cod), std::move(e));
}

Bijection iso_tensor_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x,
                          const Family& y) {
    Family d = extern_product(pullback(f, x), pullback(g, y));
    LabeledProductMap fg = lp_union_map(f, g);
    Family c = pullback(fg, extern_product(x, y));
    std::map<Elem, Elem> e;
    for (const auto& t : f.dom.tuples()) {
        auto ti = f.apply(t);
        for (const auto& u : g.dom.tuples()) {
            auto ui = g.apply(u);
            for (const auto& [kx, ax] : x.elems) {
                if (!(ax == ti)) continue;
                for (const auto& [ky, ay] : y.elems) {
                    if (!(ay == ui)) continue;
                    auto joint = t;
                    joint.insert(u.begin(), u.end());
                    e[Elem::pair(pull_key(f, t, kx), pull_key(g, u, ky))] =
                        pull_key(fg, joint, Elem::pair(kx, ky));
                }
            }
        }
    }
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(fg.dom), std::move(e));
}

Bijection iso_tensor_push(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x,
                          const Family& y) {
    LabeledProductMap fg = lp_union_map(f, g);
    Family xy = extern_product(x, y);
    Family d = pushforward(fg, xy);
    Family c = extern_product(pushforward(f, x), pushforward(g, y));
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems) e[k] = k;
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(fg.cod), std::move(e));
}

Bijection proj_formula(const LabeledProductMap& f, const Family& m, const Family& n) {
    if (!(m.base == f.cod) || !(n.base == f.dom)) throw BaseMismatch("projection formula shapes");
    Family d = pushforward(f, tensor_fiberwise(pullback(f, m), n));
    Family c = tensor_fiberwise(m, pushforward(f, n));
    std::map<Elem, Elem> e;
    for (const auto& [k, a] : d.elems) {
        Elem fm_key = k.parts()[0];
        Elem nkey = k.parts()[1];
        Elem mkey = f.is_identity() ? fm_key : fm_key.parts()[1];
        e[k] = Elem::pair(mkey, nkey);
    }
    return FamilyMap(std::move(d), std::move(c), LabeledProductMap::identity(f.cod), std::move(e));
}

std::map<int, Bijection> iso_tensor_pull_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, LabeledProductMap>& fs,
                                           const std::map<int, Family>& ys) {
    std::map<int, Family> pulled;
    for (const auto& [u, y] : ys) pulled[u] = pullback(fs.at(u), y);
    std::map<int, Family> lhs = tensor_along(sigma, cod, pulled);
    std::map<int, Bijection> out;
    for (int v : cod) {
        std::vector<int> us;
        for (const auto& [u, vv] : sigma)
            if (vv == v) us.push_back(u);
        LabeledProductMap joint = LabeledProductMap::identity(LabeledProduct::empty());
        for (std::size_t i = 0; i < us.size(); ++i)
            joint = i == 0 ? fs.at(us[0]) : lp_union_map(joint, fs.at(us[i]));
        Family rhs = pullback(joint, tensor_along(sigma, cod, ys).at(v));
        std::map<Elem, Elem> e;
        // enumerate joint anchors with per-factor element choices
        std::vector<std::pair<std::map<IndexId, Elem>, std::vector<Elem>>> acc{{{}, {}}};
        for (int u : us) {
            decltype(acc) next;
            for (const auto& [anchor, keys] : acc)
                for (const auto& t : fs.at(u).dom.tuples()) {
                    auto image = fs.at(u).apply(t);
                    for (const auto& [k, a] : ys.at(u).elems) {
                        if (!(a == image)) continue;
                        auto a2 = anchor;
                        a2.insert(t.begin(), t.end());
                        auto ks = keys;
                        ks.push_back(k);
                        next.push_back({std::move(a2), std::move(ks)});
                    }
                }
            acc = std::move(next);
        }
        for (const auto& [anchor, keys] : acc) {
            std::vector<Elem> lhs_parts;
            std::vector<Elem> rhs_parts;
            for (std::size_t i = 0; i < us.size(); ++i) {
                std::map<IndexId, Elem> sub;
                for (const auto& [idx, obj] : fs.at(us[i]).dom.factors) sub[idx] = anchor.at(idx);
                lhs_parts.push_back(pull_key(fs.at(us[i]), sub, keys[i]));
                rhs_parts.push_back(keys[i]);
            }
            e[tensor_key(std::move(lhs_parts))] =
                pull_key(joint, anchor, tensor_key(std::move(rhs_parts)));
        }
        out.emplace(v, FamilyMap(lhs.at(v), std::move(rhs), LabeledProductMap::identity(lhs.at(v).base),
                                 std::move(e)));
    }
    return out;
}

std::map<int, Bijection> iso_tensor_push_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, LabeledProductMap>& fs,
                                           const std::map<int, Family>& xs) {
    std::map<int, Bijection> out;
    for (int v : cod) {
        std::vector<int> us;
        for (const auto& [u, vv] : sigma)
            if (vv == v) us.push_back(u);
        LabeledProductMap joint = LabeledProductMap::identity(LabeledProduct::empty());
        for (std::size_t i = 0; i < us.size(); ++i)
            joint = i == 0 ? fs.at(us[0]) : lp_union_map(joint, fs.at(us[i]));
        Family lhs = pushforward(joint, tensor_along(sigma, cod, xs).at(v));
        std::vector<Family> pushed;
        for (int u : us) pushed.push_back(pushforward(fs.at(u), xs.at(u)));
        Family rhs = tensor_list(pushed);
        std::map<Elem, Elem> e;
        for (const auto& [k, a] : lhs.elems) e[k] = k;  // pushforward keeps keys
        out.emplace(v, FamilyMap(std::move(lhs), std::move(rhs),
                                 LabeledProductMap::identity(joint.cod), std::move(e)));
    }
    return out;
}

std::map<int, Bijection> iso_tensor_tensor(const std::map<int, int>& sigma, const std::vector<int>& mid,
                                           const std::map<int, int>& tau, const std::vector<int>& cod,
                                           const std::map<int, Family>& xs) {
    std::map<int, int> total;
    for (const auto& [u, v] : sigma) total[u] = tau.at(v);
    std::map<int, Family> flat = tensor_along(total, cod, xs);
    std::map<int, Family> staged_mid = tensor_along(sigma, mid, xs);
    std::map<int, Family> staged = tensor_along(tau, cod, staged_mid);

    std::map<int, Bijection> out;
    for (int w : cod) {
        std::vector<int> us, vs;
        for (const auto& [u, ww] : total)
            if (ww == w) us.push_back(u);
        for (const auto& [v, ww] : tau)
            if (ww == w) vs.push_back(v);
        // enumerate choices per u and build both keys
        std::vector<std::map<int, Elem>> choices{{}};
        for (int u : us) {
            std::vector<std::map<int, Elem>> next;
            for (const auto& ch : choices)
                for (const auto& [k, a] : xs.at(u).elems) {
                    auto c2 = ch;
                    c2[u] = k;
                    next.push_back(std::move(c2));
                }
            choices = std::move(next);
        }
        std::map<Elem, Elem> e;
        for (const auto& ch : choices) {
            std::vector<Elem> flat_parts;
            for (int u : us) flat_parts.push_back(ch.at(u));
            std::vector<Elem> nested_parts;
            for (int v : vs) {
                std::vector<Elem> inner;
                for (const auto& [u, vv] : sigma)
                    if (vv == v && std::find(us.begin(), us.end(), u) != us.end()) inner.push_back(ch.at(u));
                nested_parts.push_back(tensor_key(std::move(inner)));
            }
            e[tensor_key(std::move(flat_parts))] = tensor_key(std::move(nested_parts));
        }
        out.emplace(w, FamilyMap(flat.at(w), staged.at(w), LabeledProductMap::identity(flat.at(w).base),
                                 std::move(e)));
    }
    return out;
}

}  // namespace shadowcalc
