#include "shadowcalc/labeled_product.hpp"

#include <algorithm>

namespace shadowcalc {

std::vector<std::map<IndexId, Elem>> LabeledProduct::tuples() const {
    std::vector<std::map<IndexId, Elem>> acc{{}};
    for (const auto& [i, obj] : factors) {
        std::vector<std::map<IndexId, Elem>> next;
        next.reserve(acc.size() * obj.elems.size());
        for (const auto& t : acc)
            for (const auto& e : obj.elems) {
                auto u = t;
                u[i] = e;
                next.push_back(std::move(u));
            }
        acc = std::move(next);
    }
    return acc;
}

bool LabeledProduct::contains_tuple(const std::map<IndexId, Elem>& t) const {
    if (t.size() != factors.size()) return false;
    for (const auto& [i, obj] : factors) {
        auto it = t.find(i);
        if (it == t.end() || !obj.contains(it->second)) return false;
    }
    return true;
}

LabeledProduct lp_union(const LabeledProduct& a, const LabeledProduct& b) {
    LabeledProduct r = a;
    for (const auto& [i, obj] : b.factors) {
        if (r.factors.count(i)) throw ShapeMismatch("labeled product union with colliding index");
        r.factors[i] = obj;
    }
    return r;
}

Elem tuple_elem(const std::map<IndexId, Elem>& t) {
    std::vector<Elem> parts;
    parts.reserve(t.size());
    for (const auto& [i, e] : t) parts.push_back(e);
    return Elem::tuple(std::move(parts));
}

LabeledProductMap::LabeledProductMap(LabeledProduct d, LabeledProduct c, std::map<IndexId, IndexId> p,
                                     std::map<IndexId, BaseMap> comps)
    : dom(std::move(d)), cod(std::move(c)), index_map(std::move(p)), component(std::move(comps)) {
    for (const auto& [u, obj] : cod.factors) {
        auto pit = index_map.find(u);
        if (pit == index_map.end()) throw ShapeMismatch("labeled product map missing index image");
        if (!dom.has(pit->second)) throw ShapeMismatch("labeled product index image outside domain");
        auto cit = component.find(u);
        if (cit == component.end()) throw ShapeMismatch("labeled product map missing component");
        if (!(cit->second.dom == dom.factors.at(pit->second)) || !(cit->second.cod == obj))
            throw ShapeMismatch("labeled product component has wrong endpoints");
    }
    if (index_map.size() != cod.factors.size() || component.size() != cod.factors.size())
        throw ShapeMismatch("labeled product map data outside its codomain index");
}

LabeledProductMap LabeledProductMap::identity(const LabeledProduct& p) {
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& [i, obj] : p.factors) {
        idx[i] = i;
        comps.emplace(i, BaseMap::identity(obj));
    }
    return LabeledProductMap(p, p, std::move(idx), std::move(comps));
}

bool LabeledProductMap::is_identity() const {
    if (!(dom == cod)) return false;
    for (const auto& [u, t] : index_map)
        if (u != t) return false;
    for (const auto& [u, m] : component)
        if (!m.is_identity()) return false;
    return true;
}

std::map<IndexId, Elem> LabeledProductMap::apply(const std::map<IndexId, Elem>& t) const {
    std::map<IndexId, Elem> out;
    for (const auto& [u, m] : component) out[u] = m(t.at(index_map.at(u)));
    return out;
}

LabeledProductMap compose(const LabeledProductMap& f, const LabeledProductMap& g) {
    if (!(f.cod == g.dom)) throw CompositionMismatch("labeled product maps do not compose");
    std::map<IndexId, IndexId> idx;
    std::map<IndexId, BaseMap> comps;
    for (const auto& [w, obj] : g.cod.factors) {
        IndexId u = g.index_map.at(w);
        idx[w] = f.index_map.at(u);
        comps.emplace(w, compose(f.component.at(u), g.component.at(w)));
    }
    return LabeledProductMap(f.dom, g.cod, std::move(idx), std::move(comps));
}

LabeledProductMap lp_union_map(const LabeledProductMap& f, const LabeledProductMap& g) {
    LabeledProduct d = lp_union(f.dom, g.dom);
    LabeledProduct c = lp_union(f.cod, g.cod);
    std::map<IndexId, IndexId> idx = f.index_map;
    std::map<IndexId, BaseMap> comps = f.component;
    for (const auto& [u, t] : g.index_map) idx[u] = t;
    for (const auto& [u, m] : g.component) comps.emplace(u, m);
    return LabeledProductMap(std::move(d), std::move(c), std::move(idx), std::move(comps));
}

bool is_pullback_square(const BaseMap& f, const BaseMap& h, const BaseMap& g, const BaseMap& k) {
    // square: f: A->B (top), h: A->C (left), g: B->D (right), k: C->D (bottom)
    if (!(f.dom == h.dom) || !(f.cod == g.dom) || !(h.cod == k.dom) || !(g.cod == k.cod))
        throw ShapeMismatch("pullback test on a non-square");
    for (const auto& a : f.dom.elems)
        if (!(g(f(a)) == k(h(a)))) throw NotCommuting("square does not commute at " + a.str());
    // fiber product {(b,c) : g(b) = k(c)}; comparison a |-> (f(a), h(a))
    std::map<Elem, int> hits;
    for (const auto& b : f.cod.elems)
        for (const auto& c : h.cod.elems)
            if (g(b) == k(c)) hits[Elem::pair(b, c)] = 0;
    for (const auto& a : f.dom.elems) {
        auto key = Elem::pair(f(a), h(a));
        ++hits.at(key);
    }
    for (const auto& [key, n] : hits)
        if (n != 1) return false;
    return true;
}

bool is_beck_chevalley(const LabeledProductMap& f, const LabeledProductMap& h,
                       const LabeledProductMap& g, const LabeledProductMap& k) {
    // square: f: A->B (top), h: A->C (left), g: B->D (right), k: C->D (bottom)
    if (!(f.dom == h.dom) || !(f.cod == g.dom) || !(h.cod == k.dom) || !(g.cod == k.cod))
        throw ShapeMismatch("Beck-Chevalley test on a non-square");
    if (!(compose(f, g) == compose(h, k))) throw NotCommuting("labeled product square does not commute");

    // Per top-left index t: component square A_t -> Prod B_u, A_t -> Prod C_v,
    // Prod B_u -> Prod D_w, Prod C_v -> Prod D_w; test it for pullback.
    auto fibers = [](const std::map<IndexId, IndexId>& p, IndexId t) {
        std::vector<IndexId> us;
        for (const auto& [u, tt] : p)
            if (tt == t) us.push_back(u);
        return us;  // ascending, since map iterates in key order
    };
    auto fg = compose(f, g);
    for (const auto& [t, At] : f.dom.factors) {
        std::vector<IndexId> us = fibers(f.index_map, t);
        std::vector<IndexId> vs = fibers(h.index_map, t);
        std::vector<IndexId> ws = fibers(fg.index_map, t);

        auto prod_of = [](const LabeledProduct& p, const std::vector<IndexId>& ids) {
            std::vector<BaseObject> fs;
            fs.reserve(ids.size());
            for (IndexId i : ids) fs.push_back(p.factors.at(i));
            return product(fs);
        };
        BaseObject Bp = prod_of(f.cod, us), Cp = prod_of(h.cod, vs), Dp = prod_of(g.cod, ws);

        auto tuple_map = [](const BaseObject& d, const BaseObject& c, auto&& fnelem) {
            std::map<Elem, Elem> m;
            for (const auto& e : d.elems) m[e] = fnelem(e);
            return BaseMap(d, c, std::move(m));
        };
        BaseMap top = tuple_map(At, Bp, [&](const Elem& a) {
            std::vector<Elem> parts;
            for (IndexId u : us) parts.push_back(f.component.at(u)(a));
            return Elem::tuple(std::move(parts));
        });
        BaseMap left = tuple_map(At, Cp, [&](const Elem& a) {
            std::vector<Elem> parts;
            for (IndexId v : vs) parts.push_back(h.component.at(v)(a));
            return Elem::tuple(std::move(parts));
        });
        BaseMap right = tuple_map(Bp, Dp, [&](const Elem& b) {
            std::vector<Elem> parts;
            for (std::size_t wi = 0; wi < ws.size(); ++wi) {
                IndexId w = ws[wi];
                IndexId u = g.index_map.at(w);
                std::size_t ui = static_cast<std::size_t>(std::find(us.begin(), us.end(), u) - us.begin());
                parts.push_back(g.component.at(w)(b.parts()[ui]));
            }
            return Elem::tuple(std::move(parts));
        });
        BaseMap bottom = tuple_map(Cp, Dp, [&](const Elem& c) {
            std::vector<Elem> parts;
            for (std::size_t wi = 0; wi < ws.size(); ++wi) {
                IndexId w = ws[wi];
                IndexId v = k.index_map.at(w);
                std::size_t vi = static_cast<std::size_t>(std::find(vs.begin(), vs.end(), v) - vs.begin());
                parts.push_back(k.component.at(w)(c.parts()[vi]));
            }
            return Elem::tuple(std::move(parts));
        });
        if (!is_pullback_square(top, left, right, bottom)) return false;
    }
    return true;
}

}  // namespace shadowcalc
