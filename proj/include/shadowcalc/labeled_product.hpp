#pragma once

#include <map>
#include <vector>

#include "shadowcalc/fin.hpp"

namespace shadowcalc {

using IndexId = int;

// An object of the labeled product category over finite sets: a finite index
// set together with one finite set per index. The underlying set is the
// product of the factors; its elements are anchor tuples keyed by index.
struct LabeledProduct {
    std::map<IndexId, BaseObject> factors;

    bool operator==(const LabeledProduct& o) const = default;

    static LabeledProduct empty() { return {}; }
    static LabeledProduct single(IndexId i, BaseObject a) {
        LabeledProduct p;
        p.factors[i] = std::move(a);
        return p;
    }

    bool has(IndexId i) const { return factors.count(i) != 0; }
    std::size_t arity() const { return factors.size(); }

    // All anchor tuples, ascending in the (index-sorted) componentwise order.
    std::vector<std::map<IndexId, Elem>> tuples() const;
    bool contains_tuple(const std::map<IndexId, Elem>& t) const;
};

// Requires disjoint index sets; indices keep their identities.
LabeledProduct lp_union(const LabeledProduct& a, const LabeledProduct& b);

// Anchor tuples serialize to Elem tuples in ascending index order.
Elem tuple_elem(const std::map<IndexId, Elem>& t);

// A morphism Prod_T A_t -> Prod_U B_u: a set map p: U -> T together with one
// base map A_{p(u)} -> B_u per u. Composition is contravariant on indices and
// pointwise on components.
struct LabeledProductMap {
    LabeledProduct dom, cod;
    std::map<IndexId, IndexId> index_map;  // cod index -> dom index
    std::map<IndexId, BaseMap> component;  // cod index -> map A_{p(u)} -> B_u

    LabeledProductMap() = default;
    LabeledProductMap(LabeledProduct d, LabeledProduct c, std::map<IndexId, IndexId> p,
                      std::map<IndexId, BaseMap> comps);

    bool operator==(const LabeledProductMap& o) const = default;

    static LabeledProductMap identity(const LabeledProduct& p);
    bool is_identity() const;

    // Total map on anchor tuples.
    std::map<IndexId, Elem> apply(const std::map<IndexId, Elem>& t) const;
};

LabeledProductMap compose(const LabeledProductMap& f, const LabeledProductMap& g);  // g after f

// Disjoint external product of two maps (indices must not collide).
LabeledProductMap lp_union_map(const LabeledProductMap& f, const LabeledProductMap& g);

// Commuting square f;g = h;k from A. True iff for every index t of A the
// component square of finite sets is a pullback, checked by constructing the
// fiber product explicitly and testing the comparison map for bijectivity.
// Throws NotCommuting if the square does not commute.
bool is_beck_chevalley(const LabeledProductMap& f, const LabeledProductMap& g,
                       const LabeledProductMap& h, const LabeledProductMap& k);

// Pullback-square test for a single square of base maps (used by the
// Beck-Chevalley predicate and by the rotation counterexample).
bool is_pullback_square(const BaseMap& f, const BaseMap& g, const BaseMap& h, const BaseMap& k);

}  // namespace shadowcalc
