#pragma once

#include "shadowcalc/family.hpp"
#include "shadowcalc/matrix.hpp"

namespace shadowcalc {

// The cardinality map of bifibrations: a family goes to its fiberwise rank
// function, a family map to the 0/1 block matrices of the fiberwise
// functions. Bases are unchanged.
MatrixObject cardinality(const Family& x);
MatrixMap cardinality_map(const FamilyMap& m);

// Structure isomorphisms comparing the two orders of applying H and a basic
// operation; each is a permutation matrix in the fixed fiber element order.
MatrixMap h_pull_iso(const LabeledProductMap& f, const Family& y);
// m_pullback(f, H y) -> H(pullback(f, y))
MatrixMap h_push_iso(const LabeledProductMap& f, const Family& x);
// m_pushforward(f, H x) -> H(pushforward(f, x))
MatrixMap h_extern_iso(const Family& x, const Family& y);
// m_extern(H x, H y) -> H(x ⊠ y)
std::map<int, MatrixMap> h_tensor_iso(const std::map<int, int>& sigma, const std::vector<int>& cod,
                                      const std::map<int, Family>& xs);
// m_tensor_along(sigma, H xs) -> H(tensor_along(sigma, xs)), per component

}  // namespace shadowcalc
