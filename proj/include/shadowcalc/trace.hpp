#pragma once

#include "shadowcalc/coherence.hpp"

namespace shadowcalc {

// ---- untwisting along covers ----

// A single-component covering square: `cover` maps a connected graph onto a
// connected target, both with one star component and matching star ids.
// The returned bijection connects the two factorizations of the composite
// "cover then darken": evaluating the cover first and then the flips of
// `small_order`, versus flipping all preimages upstairs (grouped by target
// vertex, ascending within each group) and descending afterwards.
Bijection cover_square_iso(const LabeledGraphMap& cover, const std::vector<VertexId>& small_order,
                           const Assignment& a);

// The untwisting isomorphism sh(twisted product of P_i) -> sh(P_1 ... P_n),
// built as the cover square of the cyclic n-fold cover.
Bijection untwisting_iso(const std::vector<Family>& ps);

// Coherence of the cover square against reorderings on both sides: for two
// darkening orders of the target, the square of reorder isomorphisms and
// cover-square isomorphisms commutes.
bool cover_square_coherent(const LabeledGraphMap& cover, const std::vector<VertexId>& order1,
                           const std::vector<VertexId>& order2, const Assignment& a);

// The three displayed untwisting diagrams (the twist compatibility on the
// alternating cover and the two unit compatibilities) on random instances.
SuiteResult untwisting_suite(int max_n, std::uint64_t seed, int instances);

// The cyclic n-fold cover of the two-slot circle used by the untwisting maps;
// slot i carries the one-cell over (B_{i-1}, B_i).
LabeledGraphMap cyclic_cover(const std::vector<BaseObject>& bs);

// A cyclic cover with `k_small` target slots and `whites_per_arc` whites per
// arc; arc i of the source carries arc_labels[i] on all of its edges.
LabeledGraphMap slot_cover(const std::vector<BaseObject>& arc_labels, int k_small, int whites_per_arc);

// ---- traces in the matrix backend ----

// Right duals are transposed rank functions; the evaluation and coevaluation
// insert and contract identity-matrix element sums.

// trace of phi: Q (x) M -> M (x) P for square one-cells over the point
Int matrix_trace(const Mat& phi);

struct FullerInstance {
    std::vector<Mat> factors;  // F_i, square integer matrices
};

// engine multitrace: units, the phi insertions, the rotation, and the
// evaluations composed at the level of slot tensors
Int multitrace_engine(const FullerInstance& inst);

// engine Fuller route: the trace of the twisted-product comparison map
Int fuller_engine(const FullerInstance& inst);

// independent oracle: index summation of the cyclic permutation composed
// with the Kronecker product, and the plain matrix trace of the product
Int fuller_oracle_sum(const FullerInstance& inst);
Int product_trace_oracle(const FullerInstance& inst);

SuiteResult fuller_suite(int max_n, int max_k, std::uint64_t seed, int instances);

}  // namespace shadowcalc
