#pragma once

#include <map>
#include <vector>

#include "shadowcalc/util.hpp"

namespace shadowcalc {

// A finite set with a deterministic element order.
struct BaseObject {
    std::vector<Elem> elems;  // strictly ascending

    BaseObject() = default;
    explicit BaseObject(std::vector<Elem> es);
    static BaseObject range(int n);  // {0, 1, ..., n-1}

    bool contains(const Elem& e) const;
    std::size_t size() const { return elems.size(); }
    bool operator==(const BaseObject& o) const { return elems == o.elems; }
    auto operator<=>(const BaseObject& o) const { return elems <=> o.elems; }
};

// The fixed terminal object: the empty product, whose one element is the
// empty tuple.
BaseObject star();
Elem star_elem();

// A total function between finite sets.
struct BaseMap {
    BaseObject dom, cod;
    std::map<Elem, Elem> fn;

    BaseMap() = default;
    BaseMap(BaseObject d, BaseObject c, std::map<Elem, Elem> f);

    Elem operator()(const Elem& e) const;
    bool operator==(const BaseMap& o) const = default;

    static BaseMap identity(const BaseObject& a);
    static BaseMap to_star(const BaseObject& a);
    static BaseMap constant(const BaseObject& a, const BaseObject& b, const Elem& value);

    bool is_identity() const;
    bool is_bijective() const;
    BaseMap inverse() const;  // requires bijective
};

BaseMap compose(const BaseMap& f, const BaseMap& g);  // g after f

// Binary cartesian product with tuple elements (a,b).
BaseObject product(const BaseObject& a, const BaseObject& b);
// n-ary ordered product; elements are n-tuples in lexicographic order.
BaseObject product(const std::vector<BaseObject>& factors);

BaseMap product_map(const BaseMap& f, const BaseMap& g);            // f x g
BaseMap diagonal(const BaseObject& a);                              // a -> (a,a)
BaseMap graph_map(const BaseMap& f);                                // a -> (a, f(a)), A -> A x B

// Random generators for the property suites.
BaseObject random_base(Rng& rng, int max_size, int min_size = 1);
BaseMap random_map(Rng& rng, const BaseObject& dom, const BaseObject& cod);

}  // namespace shadowcalc
