#pragma once

#include <map>
#include <vector>

#include "shadowcalc/labeled_product.hpp"

namespace shadowcalc {

// A fiber object of the finite-set backend: a finite set of elements, each
// anchored at a tuple of the base product.
struct Family {
    LabeledProduct base;
    std::map<Elem, std::map<IndexId, Elem>> elems;  // key -> anchor

    bool operator==(const Family& o) const = default;

    std::size_t size() const { return elems.size(); }
    void insert(Elem key, std::map<IndexId, Elem> anchor);
    std::vector<Elem> fiber(const std::map<IndexId, Elem>& anchor) const;
};

// The unit: one element over the empty product.
Family unit_family();

// A map of families over a map of base products; anchors are compatible.
struct FamilyMap {
    Family dom, cod;
    LabeledProductMap base;
    std::map<Elem, Elem> el;

    FamilyMap() = default;
    FamilyMap(Family d, Family c, LabeledProductMap b, std::map<Elem, Elem> e);

    bool operator==(const FamilyMap& o) const = default;

    Elem operator()(const Elem& x) const { return el.at(x); }
    static FamilyMap identity(const Family& x);
    bool is_bijective() const;
    FamilyMap inverse() const;  // requires bijective and invertible base
    bool is_vertical() const { return base.is_identity(); }
};

using Bijection = FamilyMap;

FamilyMap compose(const FamilyMap& f, const FamilyMap& g);  // g after f

// The four basic operations.
Family pullback(const LabeledProductMap& f, const Family& y);     // f* y, over f.dom
Family pushforward(const LabeledProductMap& f, const Family& x);  // f_! x, over f.cod
Family extern_product(const Family& x, const Family& y);          // x ⊠ y (disjoint indices)
Family tensor_fiberwise(const Family& x, const Family& y);        // x ⊗ y over a shared base

// Unbiased tensor along a set map of components: 0-ary fibers give the unit,
// 1-ary fibers pass through unchanged, larger fibers give flat tuples in
// ascending component order. `cod` lists the target components.
std::map<int, Family> tensor_along(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                   const std::map<int, Family>& xs);
Family tensor_list(const std::vector<Family>& xs);

// Structural arrows.
FamilyMap cartesian_arrow(const LabeledProductMap& f, const Family& y);    // f*y -> y over f
FamilyMap cocartesian_arrow(const LabeledProductMap& f, const Family& x);  // x -> f_!x over f

// Universal-property helpers: fiberwise bijectivity onto the image fiber, and
// joint fiberwise bijectivity from the union of fibers over a base point.
bool is_cartesian(const FamilyMap& m);
bool is_cocartesian(const FamilyMap& m);

// Functorial action of the basic operations on maps.
FamilyMap pullback_map(const LabeledProductMap& f, const FamilyMap& m);     // vertical m
FamilyMap pushforward_map(const LabeledProductMap& f, const FamilyMap& m);  // vertical m
FamilyMap extern_map(const FamilyMap& m, const FamilyMap& n);
std::map<int, FamilyMap> tensor_along_map(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                          const std::map<int, FamilyMap>& ms);

// Canonical isomorphisms. Directions are fixed as written.
Bijection iso_comp_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x);
// (g o f)* x -> f* (g* x)
Bijection iso_comp_push(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x);
// (g o f)_! x -> g_! (f_! x)
FamilyMap beck_chevalley_map(const LabeledProductMap& f, const LabeledProductMap& h,
                             const LabeledProductMap& g, const LabeledProductMap& k, const Family& z);
// f_! h* z -> g* k_! z for the square A -f-> B, A -h-> C, B -g-> D, C -k-> D
Bijection beck_chevalley_iso(const LabeledProductMap& f, const LabeledProductMap& h,
                             const LabeledProductMap& g, const LabeledProductMap& k, const Family& z);
// the same map; throws NotBeckChevalley when the square fails the predicate
FamilyMap unit_map(const LabeledProductMap& f, const Family& x);    // x -> f* f_! x
FamilyMap counit_map(const LabeledProductMap& f, const Family& y);  // f_! f* y -> y
Bijection iso_tensor_pull(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x,
                          const Family& y);
// f*x ⊠ g*y -> (f x g)* (x ⊠ y)
Bijection iso_tensor_push(const LabeledProductMap& f, const LabeledProductMap& g, const Family& x,
                          const Family& y);
// (f x g)_! (x ⊠ y) -> f_!x ⊠ g_!y
Bijection proj_formula(const LabeledProductMap& f, const Family& m, const Family& n);
// f_!(f*m ⊗ n) -> m ⊗ f_!n

// Reassociation for staged unbiased tensors: along sigma then tau versus
// along the composite, per target component.
std::map<int, Bijection> iso_tensor_tensor(const std::map<int, int>& sigma, const std::vector<int>& mid,
                                           const std::map<int, int>& tau, const std::vector<int>& cod,
                                           const std::map<int, Family>& xs);
// tensor(tau o sigma, xs) -> tensor(tau, tensor(sigma, xs))

// Componentwise interchange of an unbiased tensor with pullbacks and
// pushforwards. Per component of `cod`:
//   tensor of pullbacks -> pullback of the tensor    (fs: new -> old bases)
//   pushforward of the tensor -> tensor of pushes    (fs: old -> new bases)
std::map<int, Bijection> iso_tensor_pull_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, LabeledProductMap>& fs,
                                           const std::map<int, Family>& ys);
std::map<int, Bijection> iso_tensor_push_n(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                           const std::map<int, LabeledProductMap>& fs,
                                           const std::map<int, Family>& xs);

}  // namespace shadowcalc
