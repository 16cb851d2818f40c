#include "shadowcalc/fin.hpp"

#include <algorithm>

namespace shadowcalc {

BaseObject::BaseObject(std::vector<Elem> es) : elems(std::move(es)) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
}

BaseObject BaseObject::range(int n) {
    std::vector<Elem> es;
    es.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) es.push_back(Elem::atom(i));
    return BaseObject(std::move(es));
}

bool BaseObject::contains(const Elem& e) const {
    return std::binary_search(elems.begin(), elems.end(), e);
}

BaseObject star() { return BaseObject({Elem::tuple({})}); }
Elem star_elem() { return Elem::tuple({}); }

BaseMap::BaseMap(BaseObject d, BaseObject c, std::map<Elem, Elem> f)
    : dom(std::move(d)), cod(std::move(c)), fn(std::move(f)) {
    for (const auto& e : dom.elems) {
        auto it = fn.find(e);
        if (it == fn.end()) throw ShapeMismatch("base map not total at " + e.str());
        if (!cod.contains(it->second)) throw ShapeMismatch("base map image outside codomain");
    }
    if (fn.size() != dom.elems.size()) throw ShapeMismatch("base map defined outside its domain");
}

Elem BaseMap::operator()(const Elem& e) const {
    auto it = fn.find(e);
    if (it == fn.end()) throw ShapeMismatch("element outside domain: " + e.str());
    return it->second;
}

BaseMap BaseMap::identity(const BaseObject& a) {
    std::map<Elem, Elem> f;
    for (const auto& e : a.elems) f[e] = e;
    return BaseMap(a, a, std::move(f));
}

BaseMap BaseMap::to_star(const BaseObject& a) {
    std::map<Elem, Elem> f;
    for (const auto& e : a.elems) f[e] = star_elem();
    return BaseMap(a, star(), std::move(f));
}

BaseMap BaseMap::constant(const BaseObject& a, const BaseObject& b, const Elem& value) {
    std::map<Elem, Elem> f;
    for (const auto& e : a.elems) f[e] = value;
    return BaseMap(a, b, std::move(f));
}

bool BaseMap::is_identity() const {
    if (!(dom == cod)) return false;
    for (const auto& [k, v] : fn)
        if (!(k == v)) return false;
    return true;
}

bool BaseMap::is_bijective() const {
    if (dom.size() != cod.size()) return false;
    std::vector<Elem> imgs;
    imgs.reserve(fn.size());
    for (const auto& [k, v] : fn) imgs.push_back(v);
    std::sort(imgs.begin(), imgs.end());
    imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
    return imgs.size() == cod.size();
}

BaseMap BaseMap::inverse() const {
    if (!is_bijective()) throw ShapeMismatch("inverse of a non-bijective base map");
    std::map<Elem, Elem> f;
    for (const auto& [k, v] : fn) f[v] = k;
    return BaseMap(cod, dom, std::move(f));
}

BaseMap compose(const BaseMap& f, const BaseMap& g) {
    if (!(f.cod == g.dom)) throw CompositionMismatch("base maps do not compose");
    std::map<Elem, Elem> h;
    for (const auto& [k, v] : f.fn) h[k] = g(v);
    return BaseMap(f.dom, g.cod, std::move(h));
}

BaseObject product(const BaseObject& a, const BaseObject& b) { return product(std::vector<BaseObject>{a, b}); }

BaseObject product(const std::vector<BaseObject>& factors) {
    std::vector<Elem> tuples{Elem::tuple({})};
    for (const auto& f : factors) {
        std::vector<Elem> next;
        next.reserve(tuples.size() * f.elems.size());
        for (const auto& t : tuples)
            for (const auto& e : f.elems) {
                auto parts = t.parts();
                parts.push_back(e);
                next.push_back(Elem::tuple(std::move(parts)));
            }
        tuples = std::move(next);
    }
    return BaseObject(std::move(tuples));
}

BaseMap product_map(const BaseMap& f, const BaseMap& g) {
    BaseObject d = product(f.dom, g.dom);
    BaseObject c = product(f.cod, g.cod);
    std::map<Elem, Elem> h;
    for (const auto& t : d.elems) h[t] = Elem::pair(f(t.parts()[0]), g(t.parts()[1]));
    return BaseMap(std::move(d), std::move(c), std::move(h));
}

BaseMap diagonal(const BaseObject& a) {
    BaseObject c = product(a, a);
    std::map<Elem, Elem> h;
    for (const auto& e : a.elems) h[e] = Elem::pair(e, e);
    return BaseMap(a, std::move(c), std::move(h));
}

BaseMap graph_map(const BaseMap& f) {
    BaseObject c = product(f.dom, f.cod);
    std::map<Elem, Elem> h;
    for (const auto& e : f.dom.elems) h[e] = Elem::pair(e, f(e));
    return BaseMap(f.dom, std::move(c), std::move(h));
}

BaseObject random_base(Rng& rng, int max_size, int min_size) {
    int n = rng.pick(min_size, max_size);
    std::vector<Elem> es;
    es.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) es.push_back(Elem::atom(i));
    return BaseObject(std::move(es));
}

BaseMap random_map(Rng& rng, const BaseObject& dom, const BaseObject& cod) {
    if (cod.elems.empty()) throw ShapeMismatch("random map into the empty set");
    std::map<Elem, Elem> f;
    for (const auto& e : dom.elems) f[e] = cod.elems[static_cast<std::size_t>(rng.pick(0, static_cast<int>(cod.size()) - 1))];
    return BaseMap(dom, cod, std::move(f));
}

}  // namespace shadowcalc
